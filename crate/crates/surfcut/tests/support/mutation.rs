//! Matrix mutation of skew-symmetric exchange matrices.

use surfcut::quiver::GradedQuiver;

/// `b[i][j]` is the number of arrows `i → j` minus the number `j → i`.
pub fn exchange_matrix(q: &GradedQuiver) -> Vec<Vec<i64>> {
    let n = q.vertex_count();
    let mut b = vec![vec![0; n]; n];
    for a in &q.arrows {
        b[a.tail][a.head] += 1;
        b[a.head][a.tail] -= 1;
    }
    b
}

/// `b'[i][j] = −b[i][j]` if `k ∈ {i, j}`, else
/// `b[i][j] + (|b[i][k]| b[k][j] + b[i][k] |b[k][j]|) / 2`.
pub fn mutate(b: &[Vec<i64>], k: usize) -> Vec<Vec<i64>> {
    let n = b.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            out[i][j] = if i == k || j == k {
                -b[i][j]
            } else {
                b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
            };
        }
    }
    out
}
