//! Dense integer matrices and Smith normal form over arbitrary-precision
//! integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Row-major dense matrix over `BigInt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i][i] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.data[i][j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: impl Into<BigInt>) {
        self.data[i][j] = x.into();
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(Zero::is_zero))
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other.data[k][j].is_zero() {
                        out.data[i][j] += a * &other.data[k][j];
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        self.data.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    /// Submatrix on the given rows and all columns.
    pub fn select_rows(&self, rows: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix { rows: rows.len(), cols: self.cols, data: self.data[rows].to_vec() }
    }

    /// Submatrix on all rows and the given columns.
    pub fn select_cols(&self, cols: std::ops::Range<usize>) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: cols.len(),
            data: self.data.iter().map(|r| r[cols.clone()].to_vec()).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.data.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.data {
            r.swap(a, b);
        }
    }

    /// `row[dst] += q * row[src]`
    fn add_row(&mut self, dst: usize, src: usize, q: &BigInt) {
        for j in 0..self.cols {
            let x = &self.data[src][j] * q;
            self.data[dst][j] += x;
        }
    }

    /// `col[dst] += q * col[src]`
    fn add_col(&mut self, dst: usize, src: usize, q: &BigInt) {
        for r in &mut self.data {
            let x = &r[src] * q;
            r[dst] += x;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.data[i] {
            *x = -&*x;
        }
    }
}

/// Smith normal form `U · A · V = D` with `U`, `V` unimodular and their
/// inverses tracked. The diagonal of `D` is non-negative and each entry
/// divides the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d.data[i][i].clone()).collect()
    }
}

/// Computes the Smith normal form, pivoting on the entry of smallest absolute
/// value in the remaining block.
pub fn smith(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut u_inv = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut v_inv = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = smallest_nonzero(&d, t) else { break };
        row_swap(&mut d, &mut u, &mut u_inv, t, pi);
        col_swap(&mut d, &mut v, &mut v_inv, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if d.data[i][t].is_zero() {
                    continue;
                }
                let q = -(&d.data[i][t] / &d.data[t][t]);
                row_add(&mut d, &mut u, &mut u_inv, i, t, &q);
                if !d.data[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if d.data[t][j].is_zero() {
                    continue;
                }
                let q = -(&d.data[t][j] / &d.data[t][t]);
                col_add(&mut d, &mut v, &mut v_inv, j, t, &q);
                if !d.data[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold a non-divisible entry into the pivot row
                let p = d.data[t][t].clone();
                let bad =
                    (t + 1..m).find_map(|i| (t + 1..n).find(|&j| !(&d.data[i][j] % &p).is_zero()).map(|j| (i, j)));
                match bad {
                    Some((i, _)) => {
                        row_add(&mut d, &mut u, &mut u_inv, t, i, &BigInt::one());
                        continue;
                    }
                    None => break,
                }
            }
            let (pi, pj) = smallest_nonzero_cross(&d, t);
            row_swap(&mut d, &mut u, &mut u_inv, t, pi);
            col_swap(&mut d, &mut v, &mut v_inv, t, pj);
        }
        if d.data[t][t].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            // u_inv gets the matching column negation
            for r in &mut u_inv.data {
                r[t] = -&r[t];
            }
        }
        t += 1;
    }
    Smith { d, u, u_inv, v, v_inv, rank: t }
}

fn smallest_nonzero(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d.data[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.data[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Smallest non-zero entry in row `t` or column `t` of the remaining block.
fn smallest_nonzero_cross(d: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let consider = |i: usize, j: usize, best: &mut (usize, usize)| {
        let x = &d.data[i][j];
        let b = &d.data[best.0][best.1];
        if !x.is_zero() && (b.is_zero() || x.abs() < b.abs()) {
            *best = (i, j);
        }
    };
    for i in t..d.rows {
        consider(i, t, &mut best);
    }
    for j in t..d.cols {
        consider(t, j, &mut best);
    }
    best
}

fn row_swap(d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    }
}

fn col_swap(d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    }
}

/// `row[dst] += q * row[src]` on `d` and `u`; inverse update on `u_inv`.
fn row_add(d: &mut IntMatrix, u: &mut IntMatrix, u_inv: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    d.add_row(dst, src, q);
    u.add_row(dst, src, q);
    u_inv.add_col(src, dst, &-q);
}

/// `col[dst] += q * col[src]` on `d` and `v`; inverse update on `v_inv`.
fn col_add(d: &mut IntMatrix, v: &mut IntMatrix, v_inv: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    d.add_col(dst, src, q);
    v.add_col(dst, src, q);
    v_inv.add_row(src, dst, &-q);
}

/// Homology `ker(out) / im(incoming)` of a pair of composable maps, where
/// `out: C_n → C_{n-1}` and `incoming: C_{n+1} → C_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyData {
    pub rank: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<BigInt>,
    /// Representatives of a basis of the free part, as vectors in `C_n`.
    pub free_basis: Vec<Vec<BigInt>>,
}

/// Computes `ker(out) / im(incoming)`. `dim` is the dimension of `C_n`, which
/// fixes the shapes when either matrix has no rows or columns.
pub fn homology(out: &IntMatrix, incoming: &IntMatrix, dim: usize) -> HomologyData {
    assert_eq!(out.cols, dim);
    assert_eq!(incoming.rows, dim);
    let s = smith(out);
    let kernel = s.v.select_cols(s.rank..dim);
    let coords = s.v_inv.mul(incoming).select_rows(s.rank..dim);
    debug_assert!(s.v_inv.mul(incoming).select_rows(0..s.rank).is_zero(), "image not inside kernel");
    let s2 = smith(&coords);
    let torsion = s2.diagonal().into_iter().filter(|x| !x.is_one()).collect();
    let reps = kernel.mul(&s2.u_inv);
    let free_basis = (s2.rank..kernel.cols).map(|j| reps.column(j)).collect();
    HomologyData { rank: kernel.cols - s2.rank, torsion, free_basis }
}
