//! Brute-force projective dimensions for cut algebras.
//!
//! Builds `Λ = kQ₀ / (∂_α S : d(α) = 1)` over GF(2³¹ − 1) as a finite
//! dimensional algebra from its path basis, then computes minimal projective
//! resolutions of the simples by linear algebra. Shares nothing with the
//! library's shape analysis beyond the quiver and its cycles.

use surfcut::complexes::SurfaceQuiver;

const P: u64 = 2_147_483_647;

fn add(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn mul(a: u64, b: u64) -> u64 {
    a * b % P
}

fn neg(a: u64) -> u64 {
    (P - a) % P
}

fn inv(a: u64) -> u64 {
    let (mut base, mut exp, mut acc) = (a, P - 2, 1);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Row echelon basis of a set of vectors with pivots recorded.
#[derive(Clone, Default)]
struct Echelon {
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn reduce(&self, v: &mut [u64]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p] != 0 {
                let f = v[p];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = add(*x, neg(mul(f, *r)));
                }
            }
        }
    }

    /// Adds a vector; returns whether it was independent.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|&x| x != 0) else { return false };
        let f = inv(v[p]);
        for x in v.iter_mut() {
            *x = mul(*x, f);
        }
        for row in &mut self.rows {
            if row[p] != 0 {
                let g = row[p];
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = add(*x, neg(mul(g, *y)));
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }
}

/// Null space of the linear map sending basis vector `j` to `cols[j]`.
fn null_space(cols: &[Vec<u64>], dim: usize) -> Vec<Vec<u64>> {
    let n = cols.len();
    // row reduce the matrix whose rows are coordinates, columns the inputs
    let mut m: Vec<Vec<u64>> = (0..dim).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..m.len()).find(|&r| m[r][col] != 0) else { continue };
        m.swap(row, r);
        let f = inv(m[row][col]);
        for x in m[row].iter_mut() {
            *x = mul(*x, f);
        }
        for r2 in 0..m.len() {
            if r2 != row && m[r2][col] != 0 {
                let g = m[r2][col];
                let pivot_row = m[row].clone();
                for (x, y) in m[r2].iter_mut().zip(&pivot_row) {
                    *x = add(*x, neg(mul(g, *y)));
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![0; n];
        v[free] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = neg(m[r][free]);
        }
        out.push(v);
    }
    out
}

/// A path of `Q(Λ)`: its start vertex and arrows in traversal order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Path {
    start: usize,
    arrows: Vec<usize>,
}

pub struct CutAlgebraOracle {
    tails: Vec<usize>,
    heads: Vec<usize>,
    lambda: Vec<usize>,
    paths: Vec<Path>,
    index: std::collections::HashMap<Path, usize>,
    ideal: Echelon,
    /// Paths not among the pivots: a basis of `Λ`.
    basis: Vec<usize>,
    vertices: usize,
}

impl CutAlgebraOracle {
    pub fn new(sq: &SurfaceQuiver, degrees: &[i64]) -> Self {
        let q = &sq.reduced;
        let tails: Vec<usize> = q.arrows.iter().map(|a| a.tail).collect();
        let heads: Vec<usize> = q.arrows.iter().map(|a| a.head).collect();
        let lambda: Vec<usize> = (0..degrees.len()).filter(|&a| degrees[a] == 0).collect();
        // relations as lists of (coefficient, arrows)
        let mut relations: Vec<Vec<(u64, Vec<usize>)>> = Vec::new();
        for a in (0..degrees.len()).filter(|&a| degrees[a] == 1) {
            let mut rel = Vec::new();
            for c in &sq.cycles {
                if !c.arrows.contains(&a) {
                    continue;
                }
                // walk the cycle from a; a cycle may pass a vertex twice, so
                // follow the stored order and only check it is composable
                let n = c.arrows.len();
                let at = c.arrows.iter().position(|&b| b == a).unwrap();
                let walk: Vec<usize> = (1..n).map(|k| c.arrows[(at + k) % n]).collect();
                for k in 0..n {
                    assert_eq!(heads[c.arrows[k]], tails[c.arrows[(k + 1) % n]], "cycle not in traversal order");
                }
                let triangle = matches!(c.kind, surfcut::complexes::CycleKind::Triangle(_));
                rel.push((if triangle { 1 } else { P - 1 }, walk));
            }
            relations.push(rel);
        }
        let vertices = q.vertex_count();
        let mut previous = None;
        for length in 2..60 {
            let built = Self::build(vertices, &tails, &heads, &lambda, &relations, length);
            let dim = built.basis.len();
            if previous == Some(dim) {
                return built;
            }
            previous = Some(dim);
        }
        panic!("cut algebra looks infinite dimensional");
    }

    /// `kQ₀ / (I + J^length)`.
    fn build(
        vertices: usize,
        tails: &[usize],
        heads: &[usize],
        lambda: &[usize],
        relations: &[Vec<(u64, Vec<usize>)>],
        length: usize,
    ) -> Self {
        let mut paths: Vec<Path> = (0..vertices).map(|v| Path { start: v, arrows: vec![] }).collect();
        let mut frontier = paths.clone();
        for _ in 1..length {
            let mut next = Vec::new();
            for p in &frontier {
                let end = p.arrows.last().map_or(p.start, |&a| heads[a]);
                for &a in lambda.iter().filter(|&&a| tails[a] == end) {
                    let mut q = p.clone();
                    q.arrows.push(a);
                    next.push(q);
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        // longer paths first so that pivots fall on long paths
        paths.sort_by_key(|p| std::cmp::Reverse(p.arrows.len()));
        let index: std::collections::HashMap<Path, usize> =
            paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let mut ideal = Echelon::default();
        for rel in relations {
            let start = tails[rel[0].1[0]];
            let end = heads[*rel[0].1.last().unwrap()];
            for u in paths.iter().filter(|u| u.arrows.last().map_or(u.start, |&a| heads[a]) == start) {
                for v in paths.iter().filter(|v| v.start == end) {
                    let mut vec = vec![0; paths.len()];
                    let mut any = false;
                    for (c, term) in rel {
                        let arrows: Vec<usize> = u.arrows.iter().chain(term).chain(&v.arrows).copied().collect();
                        if arrows.len() < length {
                            let p = Path { start: u.start, arrows };
                            let i = index[&p];
                            vec[i] = add(vec[i], *c);
                            any = true;
                        }
                    }
                    if any {
                        ideal.insert(vec);
                    }
                }
            }
        }
        let basis = (0..paths.len()).filter(|i| !ideal.pivots.contains(i)).collect();
        Self {
            tails: tails.to_vec(),
            heads: heads.to_vec(),
            lambda: lambda.to_vec(),
            paths,
            index,
            ideal,
            basis,
            vertices,
        }
    }

    fn end(&self, p: &Path) -> usize {
        p.arrows.last().map_or(p.start, |&a| self.heads[a])
    }

    /// Coordinates in `basis` of a path extended by one arrow.
    fn extend(&self, b: usize, a: usize) -> Vec<u64> {
        let p = &self.paths[self.basis[b]];
        let mut out = vec![0; self.basis.len()];
        if self.end(p) != self.tails[a] {
            return out;
        }
        let mut arrows = p.arrows.clone();
        arrows.push(a);
        let Some(&i) = self.index.get(&Path { start: p.start, arrows }) else { return out };
        let mut v = vec![0; self.paths.len()];
        v[i] = 1;
        self.ideal.reduce(&mut v);
        for (k, &bi) in self.basis.iter().enumerate() {
            out[k] = v[bi];
        }
        out
    }

    /// Basis paths starting at `x`.
    fn projective(&self, x: usize) -> Vec<usize> {
        (0..self.basis.len()).filter(|&b| self.paths[self.basis[b]].start == x).collect()
    }

    /// Whether the simple at `x` has projective dimension at least 3.
    pub fn pd_ge_3(&self, x: usize) -> bool {
        self.syzygy_dimensions(x, 3)[2] > 0
    }

    /// Dimensions of `Ω¹ S(x), …, Ωⁿ S(x)`.
    pub fn syzygy_dimensions(&self, x: usize, n: usize) -> Vec<usize> {
        let mut free = vec![x];
        let summand = self.projective(x);
        let dim = summand.len();
        let mut module: Vec<Vec<u64>> = Vec::new();
        for (k, &b) in summand.iter().enumerate() {
            if !self.paths[self.basis[b]].arrows.is_empty() {
                let mut v = vec![0; dim];
                v[k] = 1;
                module.push(v);
            }
        }
        let mut dims = vec![module.len()];
        for _ in 1..n {
            let (next_free, next) = self.syzygy(&free, &module);
            dims.push(next.len());
            free = next_free;
            module = next;
        }
        dims
    }

    /// Coordinates of a free module `⊕ P(x_k)`: (summand, basis element).
    fn coordinates(&self, free: &[usize]) -> Vec<(usize, usize)> {
        free.iter().enumerate().flat_map(|(k, &x)| self.projective(x).into_iter().map(move |b| (k, b))).collect()
    }

    fn vertex_of(&self, free: &[usize], v: &[u64]) -> Option<usize> {
        let coords = self.coordinates(free);
        coords.iter().zip(v).find(|(_, &c)| c != 0).map(|((_, b), _)| self.end(&self.paths[self.basis[*b]]))
    }

    fn act(&self, free: &[usize], v: &[u64], a: usize) -> Vec<u64> {
        let coords = self.coordinates(free);
        let pos: std::collections::HashMap<(usize, usize), usize> =
            coords.iter().copied().enumerate().map(|(i, c)| (c, i)).collect();
        let mut out = vec![0; coords.len()];
        for (&(k, b), &c) in coords.iter().zip(v) {
            if c == 0 {
                continue;
            }
            for (b2, &y) in self.extend(b, a).iter().enumerate() {
                if y != 0 {
                    let i = pos[&(k, b2)];
                    out[i] = add(out[i], mul(c, y));
                }
            }
        }
        out
    }

    /// Projective cover of a submodule of `⊕ P(free_k)` given by a basis of
    /// vertex-homogeneous vectors; returns the cover's summands and the
    /// kernel as a submodule of it.
    fn syzygy(&self, free: &[usize], module: &[Vec<u64>]) -> (Vec<usize>, Vec<Vec<u64>>) {
        let dim = self.coordinates(free).len();
        let mut radical = Echelon::default();
        for m in module {
            for &a in &self.lambda {
                let w = self.act(free, m, a);
                if w.iter().any(|&c| c != 0) {
                    radical.insert(w);
                }
            }
        }
        // generators: extend the radical to the whole module, vertex by vertex
        let mut span = radical.clone();
        let mut gens: Vec<(usize, Vec<u64>)> = Vec::new();
        for m in module {
            if span.insert(m.clone()) {
                gens.push((self.vertex_of(free, m).unwrap(), m.clone()));
            }
        }
        let cover: Vec<usize> = gens.iter().map(|(x, _)| *x).collect();
        // images of the basis of the cover
        let mut images = Vec::new();
        for (g, (x, gv)) in gens.iter().enumerate() {
            for b in self.projective(*x) {
                let p = &self.paths[self.basis[b]];
                let mut v = gv.clone();
                for &a in &p.arrows {
                    v = self.act(free, &v, a);
                }
                images.push(((g, b), v));
            }
        }
        let cols: Vec<Vec<u64>> = images.iter().map(|(_, v)| v.clone()).collect();
        let kernel = null_space(&cols, dim);
        // split kernel vectors by vertex so that they stay homogeneous
        let cover_coords = self.coordinates(&cover);
        let mut homogeneous = Vec::new();
        for z in 0..self.vertices {
            let mut part = Echelon::default();
            for k in &kernel {
                let v: Vec<u64> = cover_coords
                    .iter()
                    .zip(k)
                    .map(|((_, b), &c)| if self.end(&self.paths[self.basis[*b]]) == z { c } else { 0 })
                    .collect();
                if v.iter().any(|&c| c != 0) && part.insert(v.clone()) {
                    homogeneous.push(v);
                }
            }
        }
        (cover, homogeneous)
    }
}
