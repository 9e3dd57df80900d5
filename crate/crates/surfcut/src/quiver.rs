//! Graded quivers, graded left mutation and grading equivalence.
//!
//! An arrow `a: t(a) → h(a)` carries an integer degree `d(a)`. Two gradings
//! `d1`, `d2` on the same quiver are equivalent when some `r: Q₀ → Z`
//! satisfies `d1(a) = d2(a) + r(h(a)) − r(t(a))` for every arrow.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GradedQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
}

/// Vertex potential witnessing an equivalence of gradings.
pub type RFunction = Vec<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("vertex {0} out of range")]
    UnknownVertex(usize),
    #[error("quiver has a loop at vertex `{0}`")]
    LoopAtVertex(String),
    #[error("quiver is not 2-acyclic at `{0}` and `{1}`")]
    NotTwoAcyclic(String, String),
    #[error("isomorphism search limited to {limit} vertices, quiver has {found}")]
    SizeLimitExceeded { limit: usize, found: usize },
    #[error("grading has {found} entries for {expected} arrows")]
    BasisMismatch { expected: usize, found: usize },
}

impl GradedQuiver {
    pub fn new(vertices: Vec<String>) -> Self {
        Self { vertices, arrows: Vec::new() }
    }

    /// Appends an arrow and returns its index.
    pub fn add_arrow(&mut self, name: impl Into<String>, tail: usize, head: usize, degree: i64) -> usize {
        self.arrows.push(Arrow { name: name.into(), tail, head, degree });
        self.arrows.len() - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.arrows.iter().map(|a| a.degree).collect()
    }

    /// Same shape with the given degrees.
    pub fn with_degrees(&self, degrees: &[i64]) -> Result<GradedQuiver, QuiverError> {
        if degrees.len() != self.arrows.len() {
            return Err(QuiverError::BasisMismatch { expected: self.arrows.len(), found: degrees.len() });
        }
        let mut q = self.clone();
        for (a, &d) in q.arrows.iter_mut().zip(degrees) {
            a.degree = d;
        }
        Ok(q)
    }

    /// Number of arrows from `u` to `v`.
    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.tail == u && a.head == v).count()
    }

    /// First pair of opposite arrows, if any.
    pub fn two_cycle(&self) -> Option<(usize, usize)> {
        for (i, a) in self.arrows.iter().enumerate() {
            for (j, b) in self.arrows.iter().enumerate().skip(i + 1) {
                if a.tail == b.head && a.head == b.tail && a.tail != a.head {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Graded left mutation at `k`.
    ///
    /// Each path `a: j → k`, `b: k → i` yields a composite `[b.a]: j → i` of
    /// degree `d(a) + d(b)`. An arrow `b` with head `k` is reversed to `b*` of
    /// degree `1 − d(b)`, and an arrow `a` with tail `k` to `a*` of degree
    /// `−d(a)`. Afterwards 2-cycles whose degrees sum to 1 are removed
    /// greedily in arrow order.
    pub fn graded_mutate(&self, k: usize) -> Result<GradedQuiver, QuiverError> {
        if k >= self.vertices.len() {
            return Err(QuiverError::UnknownVertex(k));
        }
        if self.arrows.iter().any(|a| a.tail == k && a.head == k) {
            return Err(QuiverError::LoopAtVertex(self.vertices[k].clone()));
        }
        if let Some((i, _)) = self.two_cycle() {
            let a = &self.arrows[i];
            return Err(QuiverError::NotTwoAcyclic(self.vertices[a.tail].clone(), self.vertices[a.head].clone()));
        }
        let mut out = GradedQuiver::new(self.vertices.clone());
        for a in self.arrows.iter().filter(|a| a.tail != k && a.head != k) {
            out.arrows.push(a.clone());
        }
        let incoming: Vec<&Arrow> = self.arrows.iter().filter(|a| a.head == k).collect();
        let outgoing: Vec<&Arrow> = self.arrows.iter().filter(|a| a.tail == k).collect();
        for a in &incoming {
            for b in &outgoing {
                out.add_arrow(format!("[{}.{}]", b.name, a.name), a.tail, b.head, a.degree + b.degree);
            }
        }
        for a in self.arrows.iter().filter(|a| a.head == k || a.tail == k) {
            let degree = if a.head == k { 1 - a.degree } else { -a.degree };
            out.add_arrow(format!("{}*", a.name), a.head, a.tail, degree);
        }
        let mut removed = vec![false; out.arrows.len()];
        for i in 0..out.arrows.len() {
            if removed[i] {
                continue;
            }
            let a = &out.arrows[i];
            let partner = (i + 1..out.arrows.len()).find(|&j| {
                let b = &out.arrows[j];
                !removed[j] && b.tail == a.head && b.head == a.tail && a.degree + b.degree == 1
            });
            if let Some(j) = partner {
                removed[i] = true;
                removed[j] = true;
            }
        }
        let mut keep = removed.iter().map(|r| !r);
        out.arrows.retain(|_| keep.next().unwrap());
        if let Some((i, _)) = out.two_cycle() {
            let a = &out.arrows[i];
            return Err(QuiverError::NotTwoAcyclic(out.vertices[a.tail].clone(), out.vertices[a.head].clone()));
        }
        Ok(out)
    }

    /// Vertices grouped by connected component of the underlying graph.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.tail].push(a.head);
            adj[a.head].push(a.tail);
        }
        let mut seen = vec![false; n];
        let mut comps = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut i = 0;
            while i < comp.len() {
                for &w in &adj[comp[i]] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                i += 1;
            }
            comps.push(comp);
        }
        comps
    }
}

/// Solves `r(h(a)) − r(t(a)) = diff(a)` for all arrows, with `r = 0` at the
/// first vertex of each component.
fn solve_potential(n: usize, arrows: &[(usize, usize, i64)]) -> Option<RFunction> {
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for &(t, h, d) in arrows {
        adj[t].push((h, d));
        adj[h].push((t, -d));
    }
    let mut r: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if r[root].is_some() {
            continue;
        }
        r[root] = Some(0);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let rv = r[v].unwrap();
            for &(w, d) in &adj[v] {
                match r[w] {
                    None => {
                        r[w] = Some(rv + d);
                        stack.push(w);
                    }
                    Some(rw) if rw != rv + d => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(r.into_iter().map(Option::unwrap).collect())
}

/// Witness `r` with `d1(a) = d2(a) + r(h(a)) − r(t(a))`, if one exists.
pub fn gradings_equivalent(q: &GradedQuiver, d1: &[i64], d2: &[i64]) -> Result<Option<RFunction>, QuiverError> {
    for d in [d1, d2] {
        if d.len() != q.arrows.len() {
            return Err(QuiverError::BasisMismatch { expected: q.arrows.len(), found: d.len() });
        }
    }
    let constraints: Vec<_> =
        q.arrows.iter().zip(d1.iter().zip(d2)).map(|(a, (x, y))| (a.tail, a.head, x - y)).collect();
    Ok(solve_potential(q.vertex_count(), &constraints))
}

/// Checks whether the vertex bijection `phi` (from `q1` to `q2`) is a graded
/// isomorphism: arrow multiplicities agree and, after matching parallel arrows
/// in sorted degree order, the gradings are equivalent.
pub fn graded_isomorphism_via(q1: &GradedQuiver, q2: &GradedQuiver, phi: &[usize]) -> Option<RFunction> {
    if q1.vertex_count() != q2.vertex_count() || q1.arrows.len() != q2.arrows.len() || phi.len() != q1.vertex_count() {
        return None;
    }
    let mut classes: BTreeMap<(usize, usize), (Vec<i64>, Vec<i64>)> = BTreeMap::new();
    for a in &q1.arrows {
        classes.entry((a.tail, a.head)).or_default().0.push(a.degree);
    }
    let mut inverse = vec![usize::MAX; phi.len()];
    for (u, &w) in phi.iter().enumerate() {
        if w >= inverse.len() || inverse[w] != usize::MAX {
            return None;
        }
        inverse[w] = u;
    }
    for a in &q2.arrows {
        classes.entry((inverse[a.tail], inverse[a.head])).or_default().1.push(a.degree);
    }
    let mut constraints = Vec::new();
    for (&(t, h), (x, y)) in classes.iter_mut() {
        if x.len() != y.len() {
            return None;
        }
        x.sort_unstable();
        y.sort_unstable();
        let diff = x[0] - y[0];
        if x.iter().zip(y.iter()).any(|(a, b)| a - b != diff) {
            return None;
        }
        constraints.push((t, h, diff));
    }
    solve_potential(q1.vertex_count(), &constraints)
}

/// Backtracking search for a graded isomorphism `q1 → q2`, returned as a
/// vertex map. The identity (by vertex name) is tried first.
pub fn graded_isomorphic(
    q1: &GradedQuiver,
    q2: &GradedQuiver,
    max_vertices: usize,
) -> Result<Option<Vec<usize>>, QuiverError> {
    let n = q1.vertex_count();
    if n > max_vertices {
        return Err(QuiverError::SizeLimitExceeded { limit: max_vertices, found: n });
    }
    if n != q2.vertex_count() || q1.arrows.len() != q2.arrows.len() {
        return Ok(None);
    }
    let by_name: HashMap<&str, usize> = q2.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let identity: Option<Vec<usize>> = q1.vertices.iter().map(|v| by_name.get(v.as_str()).copied()).collect();
    if let Some(phi) = identity {
        if graded_isomorphism_via(q1, q2, &phi).is_some() {
            return Ok(Some(phi));
        }
    }
    let mult = |q: &GradedQuiver| {
        let mut m = vec![vec![0usize; n]; n];
        for a in &q.arrows {
            m[a.tail][a.head] += 1;
        }
        m
    };
    let (m1, m2) = (mult(q1), mult(q2));
    let signature = |m: &Vec<Vec<usize>>, v: usize| {
        let out: usize = m[v].iter().sum();
        let inn: usize = m.iter().map(|row| row[v]).sum();
        (out, inn, m[v][v])
    };
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|u| {
            let mut c: Vec<usize> = (0..n).filter(|&w| signature(&m1, u) == signature(&m2, w)).collect();
            if let Some(&w) = by_name.get(q1.vertices[u].as_str()) {
                if let Some(pos) = c.iter().position(|&x| x == w) {
                    c.remove(pos);
                    c.insert(0, w);
                }
            }
            c
        })
        .collect();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let found =
        search(0, &m1, &m2, &candidates, &mut phi, &mut used, &mut |phi| graded_isomorphism_via(q1, q2, phi).is_some());
    Ok(found.then_some(phi))
}

fn search(
    u: usize,
    m1: &[Vec<usize>],
    m2: &[Vec<usize>],
    candidates: &[Vec<usize>],
    phi: &mut Vec<usize>,
    used: &mut Vec<bool>,
    accept: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if u == phi.len() {
        return accept(phi);
    }
    for &w in &candidates[u] {
        if used[w] {
            continue;
        }
        let consistent = (0..u).all(|v| m1[u][v] == m2[w][phi[v]] && m1[v][u] == m2[phi[v]][w]) && m1[u][u] == m2[w][w];
        if !consistent {
            continue;
        }
        phi[u] = w;
        used[w] = true;
        if search(u + 1, m1, m2, candidates, phi, used, accept) {
            return true;
        }
        used[w] = false;
    }
    phi[u] = usize::MAX;
    false
}

/// Sum of degrees along a list of arrows.
pub fn cycle_degree(q: &GradedQuiver, cycle: &[usize]) -> i64 {
    cycle.iter().map(|&a| q.arrows[a].degree).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiver(n: usize, arrows: &[(&str, usize, usize, i64)]) -> GradedQuiver {
        let mut q = GradedQuiver::new((1..=n).map(|i| i.to_string()).collect());
        for &(name, t, h, d) in arrows {
            q.add_arrow(name, t, h, d);
        }
        q
    }

    #[test]
    fn single_arrow_mutation() {
        let q = quiver(2, &[("a", 0, 1, 0)]);
        let m = q.graded_mutate(1).unwrap();
        assert_eq!(m.arrows, vec![Arrow { name: "a*".into(), tail: 1, head: 0, degree: 1 }]);
    }

    #[test]
    fn kronecker_mutation() {
        let q = quiver(2, &[("a", 0, 1, 0), ("b", 0, 1, 0)]);
        let m = q.graded_mutate(1).unwrap();
        assert_eq!(m.arrows.len(), 2);
        assert!(m.arrows.iter().all(|a| a.tail == 1 && a.head == 0 && a.degree == 1));
    }

    #[test]
    fn three_cycle_mutation_cancels_composite() {
        let q = quiver(3, &[("a", 0, 1, 1), ("b", 1, 2, 0), ("c", 2, 0, 0)]);
        let m = q.graded_mutate(1).unwrap();
        let names: Vec<_> = m.arrows.iter().map(|a| (a.name.as_str(), a.tail, a.head, a.degree)).collect();
        assert_eq!(names, vec![("a*", 1, 0, 0), ("b*", 2, 1, 0)]);
    }

    #[test]
    fn loop_rejected() {
        let q = quiver(2, &[("l", 0, 0, 0), ("a", 0, 1, 0)]);
        assert!(matches!(q.graded_mutate(0), Err(QuiverError::LoopAtVertex(_))));
    }

    #[test]
    fn kronecker_equivalences() {
        let q = quiver(2, &[("a", 0, 1, 0), ("b", 0, 1, 0)]);
        assert_eq!(gradings_equivalent(&q, &[0, 0], &[0, 0]).unwrap(), Some(vec![0, 0]));
        assert_eq!(gradings_equivalent(&q, &[0, 0], &[1, 1]).unwrap(), Some(vec![0, -1]));
        assert_eq!(gradings_equivalent(&q, &[0, 0], &[0, 1]).unwrap(), None);
    }

    #[test]
    fn isomorphism_search() {
        let k0 = quiver(2, &[("a", 0, 1, 0), ("b", 0, 1, 0)]);
        let k1 = quiver(2, &[("a", 0, 1, 1), ("b", 0, 1, 1)]);
        let two_cycle = quiver(2, &[("a", 0, 1, 0), ("b", 1, 0, 0)]);
        assert_eq!(graded_isomorphic(&k0, &k0, 8).unwrap(), Some(vec![0, 1]));
        assert!(graded_isomorphic(&k0, &k1, 8).unwrap().is_some());
        assert_eq!(graded_isomorphic(&k0, &two_cycle, 8).unwrap(), None);
        assert!(matches!(graded_isomorphic(&k0, &k0, 1), Err(QuiverError::SizeLimitExceeded { .. })));
    }

    #[test]
    fn isomorphism_needs_relabeling() {
        let q1 = quiver(3, &[("a", 0, 1, 0), ("b", 1, 2, 0), ("c", 1, 2, 0)]);
        let q2 = quiver(3, &[("x", 2, 1, 0), ("y", 2, 1, 0), ("z", 0, 2, 0)]);
        assert_eq!(graded_isomorphic(&q1, &q2, 8).unwrap(), Some(vec![0, 2, 1]));
    }
}
