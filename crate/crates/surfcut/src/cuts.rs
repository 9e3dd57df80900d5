//! Admissible cuts and the tri-coloured matching graph `G_τ`.
//!
//! A cut is a set of arrows of `Q(τ)` meeting every cycle in exactly one
//! arrow; the arrows of the cut get degree 1 and all others degree 0.
//!
//! For a valency ≥ 3 triangulation, `G_τ` has a white vertex for each
//! internal triangle and each triangle with a boundary side and a puncture
//! corner, a black vertex for each puncture, and a grey vertex for each
//! internal triangle touching the boundary and each triangle of the second
//! white kind. Each arrow `α` at a puncture gives an edge `E_α` from its
//! triangle to the puncture; each arrow of an internal triangle at a boundary
//! point gives `E_α` from the triangle to its grey vertex; the single arrow of
//! a one-arrow puncture triangle also gives `F_α` from the triangle to its
//! grey vertex. Without boundary there are no grey vertices.
//!
//! Cuts correspond to matchings saturating the white and black vertices via
//! `C ↦ {E_α : α ∈ C} ∪ {F_α : α ∉ C}` and `M ↦ {α : E_α ∈ M}`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexError, SurfaceQuiver};
use crate::surface::{Corner, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CutError {
    #[error("puncture {puncture} has valency {valency}; the matching graph needs valency at least 3")]
    ValencyTooLow { puncture: usize, valency: usize },
    #[error("matching does not saturate all white and black vertices")]
    NotSaturating,
    #[error("grading is not an admissible cut: {0}")]
    NotACut(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Set of arrows of `Q(τ)` of degree 1, sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cut {
    pub arrows: Vec<usize>,
}

impl Cut {
    pub fn new(mut arrows: Vec<usize>) -> Self {
        arrows.sort_unstable();
        arrows.dedup();
        Self { arrows }
    }

    /// Degree vector on the arrows of `Q(τ)`.
    pub fn degrees(&self, sq: &SurfaceQuiver) -> Vec<i64> {
        let mut d = vec![0; sq.reduced.arrows.len()];
        for &a in &self.arrows {
            d[a] = 1;
        }
        d
    }

    /// Reads a cut off a degree vector, checking admissibility.
    pub fn from_degrees(sq: &SurfaceQuiver, degrees: &[i64]) -> Result<Self, CutError> {
        check_cut(sq, degrees)?;
        Ok(Self::new(degrees.iter().enumerate().filter(|(_, &d)| d == 1).map(|(i, _)| i).collect()))
    }
}

/// Checks that a grading takes values in {0, 1}, vanishes off the cycles and
/// has exactly one degree-1 arrow on every cycle.
pub fn check_cut(sq: &SurfaceQuiver, degrees: &[i64]) -> Result<(), CutError> {
    if degrees.len() != sq.reduced.arrows.len() {
        return Err(CutError::NotACut(format!("{} degrees for {} arrows", degrees.len(), sq.reduced.arrows.len())));
    }
    let mut in_cycle = vec![false; degrees.len()];
    for c in &sq.cycles {
        for &a in &c.arrows {
            in_cycle[a] = true;
        }
        let ones = c.arrows.iter().filter(|&&a| degrees[a] == 1).count();
        if ones != 1 {
            return Err(CutError::NotACut(format!("a cycle has {ones} arrows of degree 1")));
        }
    }
    for (a, &d) in degrees.iter().enumerate() {
        if d != 0 && d != 1 {
            return Err(CutError::NotACut(format!("arrow `{}` has degree {d}", sq.reduced.arrows[a].name)));
        }
        if d == 1 && !in_cycle[a] {
            return Err(CutError::NotACut(format!("arrow `{}` lies on no cycle", sq.reduced.arrows[a].name)));
        }
    }
    Ok(())
}

/// All admissible cuts, in lexicographic order of their arrow lists.
pub fn enumerate_cuts(sq: &SurfaceQuiver) -> Vec<Cut> {
    let n = sq.reduced.arrows.len();
    let mut cycles_of = vec![Vec::new(); n];
    for (i, c) in sq.cycles.iter().enumerate() {
        for &a in &c.arrows {
            cycles_of[a].push(i);
        }
    }
    let mut count = vec![0usize; sq.cycles.len()];
    let mut chosen = Vec::new();
    let mut out = Vec::new();
    fn go(
        i: usize,
        sq: &SurfaceQuiver,
        cycles_of: &[Vec<usize>],
        count: &mut [usize],
        chosen: &mut Vec<usize>,
        out: &mut Vec<Cut>,
    ) {
        if i == sq.cycles.len() {
            if count.iter().all(|&c| c == 1) {
                out.push(Cut::new(chosen.clone()));
            }
            return;
        }
        if count[i] > 0 {
            go(i + 1, sq, cycles_of, count, chosen, out);
            return;
        }
        let mut arrows = sq.cycles[i].arrows.clone();
        arrows.sort_unstable();
        arrows.dedup();
        for a in arrows {
            if cycles_of[a].iter().any(|&j| count[j] > 0) {
                continue;
            }
            for &j in &cycles_of[a] {
                count[j] += 1;
            }
            chosen.push(a);
            go(i + 1, sq, cycles_of, count, chosen, out);
            chosen.pop();
            for &j in &cycles_of[a] {
                count[j] -= 1;
            }
        }
    }
    go(0, sq, &cycles_of, &mut count, &mut chosen, &mut out);
    out.sort();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    E,
    F,
}

/// Non-white end of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Partner {
    Black(usize),
    Grey(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEdge {
    pub kind: EdgeKind,
    /// Arrow of `Q(τ)` labelling the edge.
    pub arrow: usize,
    /// Index into `whites`.
    pub white: usize,
    pub partner: Partner,
}

/// `G_τ`. White and grey vertices are triangle indices, black vertices are
/// marked-point indices; edges refer to positions in these lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingGraph {
    pub whites: Vec<usize>,
    pub blacks: Vec<usize>,
    pub greys: Vec<usize>,
    pub edges: Vec<MatchEdge>,
}

/// Sorted list of edge indices.
pub type Matching = Vec<usize>;

impl MatchingGraph {
    pub fn new(t: &Triangulation, sq: &SurfaceQuiver) -> Result<Self, CutError> {
        for (p, pt) in t.vertex_structure().punctures() {
            if pt.valency < 3 {
                return Err(CutError::ValencyTooLow { puncture: p, valency: pt.valency });
            }
        }
        let corner_is_puncture =
            |tri: usize, c: usize| t.is_puncture(t.corner_point(Corner { triangle: tri, corner: c }));
        let mut whites = Vec::new();
        let mut greys = Vec::new();
        for tri in 0..t.triangles().len() {
            let arrows: Vec<usize> =
                (0..3).filter(|&c| sq.arrow_at(Corner { triangle: tri, corner: c }).is_some()).collect();
            if t.is_internal(tri) {
                whites.push(tri);
                if (0..3).any(|c| !corner_is_puncture(tri, c)) {
                    greys.push(tri);
                }
            } else if arrows.len() == 1 && corner_is_puncture(tri, arrows[0]) {
                whites.push(tri);
                greys.push(tri);
            }
        }
        let blacks: Vec<usize> = t.vertex_structure().punctures().map(|(p, _)| p).collect();
        let mut edges = Vec::new();
        for (w, &tri) in whites.iter().enumerate() {
            let grey = greys.iter().position(|&g| g == tri);
            for c in 0..3 {
                let Some(arrow) = sq.arrow_at(Corner { triangle: tri, corner: c }) else { continue };
                let point = t.corner_point(Corner { triangle: tri, corner: c });
                if t.is_puncture(point) {
                    let b = blacks.iter().position(|&x| x == point).unwrap();
                    edges.push(MatchEdge { kind: EdgeKind::E, arrow, white: w, partner: Partner::Black(b) });
                    if !t.is_internal(tri) {
                        edges.push(MatchEdge {
                            kind: EdgeKind::F,
                            arrow,
                            white: w,
                            partner: Partner::Grey(grey.unwrap()),
                        });
                    }
                } else {
                    edges.push(MatchEdge { kind: EdgeKind::E, arrow, white: w, partner: Partner::Grey(grey.unwrap()) });
                }
            }
        }
        Ok(Self { whites, blacks, greys, edges })
    }

    pub fn count(&self, kind: EdgeKind) -> usize {
        self.edges.iter().filter(|e| e.kind == kind).count()
    }

    /// True when the edge set is a matching covering every white and black vertex.
    pub fn is_saturating(&self, m: &[usize]) -> bool {
        let mut white = vec![0; self.whites.len()];
        let mut black = vec![0; self.blacks.len()];
        let mut grey = vec![0; self.greys.len()];
        for &e in m {
            let edge = self.edges[e];
            white[edge.white] += 1;
            match edge.partner {
                Partner::Black(b) => black[b] += 1,
                Partner::Grey(g) => grey[g] += 1,
            }
        }
        white.iter().all(|&x| x == 1) && black.iter().all(|&x| x == 1) && grey.iter().all(|&x| x <= 1)
    }

    /// `M(C) = {E_α : α ∈ C} ∪ {F_α : α ∉ C}`.
    pub fn cut_to_matching(&self, cut: &Cut) -> Result<Matching, CutError> {
        let m: Matching = (0..self.edges.len())
            .filter(|&i| {
                let e = self.edges[i];
                let inside = cut.arrows.binary_search(&e.arrow).is_ok();
                (e.kind == EdgeKind::E) == inside
            })
            .collect();
        if self.is_saturating(&m) {
            Ok(m)
        } else {
            Err(CutError::NotSaturating)
        }
    }

    /// `C(M) = {α : E_α ∈ M}`.
    pub fn matching_to_cut(&self, m: &[usize]) -> Result<Cut, CutError> {
        if !self.is_saturating(m) {
            return Err(CutError::NotSaturating);
        }
        Ok(Cut::new(m.iter().map(|&e| self.edges[e]).filter(|e| e.kind == EdgeKind::E).map(|e| e.arrow).collect()))
    }

    fn partner_index(&self, p: Partner) -> usize {
        match p {
            Partner::Black(b) => b,
            Partner::Grey(g) => self.blacks.len() + g,
        }
    }

    /// Maximum matching from the white side into black and grey vertices.
    pub fn saturate_white(&self) -> Option<Matching> {
        let right = self.blacks.len() + self.greys.len();
        let adj: Vec<Vec<(usize, usize)>> = (0..self.whites.len())
            .map(|w| {
                (0..self.edges.len())
                    .filter(|&e| self.edges[e].white == w)
                    .map(|e| (e, self.partner_index(self.edges[e].partner)))
                    .collect()
            })
            .collect();
        kuhn(&adj, right)
    }

    /// Maximum matching from the black side into white vertices.
    pub fn saturate_black(&self) -> Option<Matching> {
        let adj: Vec<Vec<(usize, usize)>> = (0..self.blacks.len())
            .map(|b| {
                (0..self.edges.len())
                    .filter(|&e| self.edges[e].partner == Partner::Black(b))
                    .map(|e| (e, self.edges[e].white))
                    .collect()
            })
            .collect();
        kuhn(&adj, self.whites.len())
    }

    /// Endpoints of an edge as (white, partner) vertex ids in one numbering:
    /// whites first, then blacks, then greys.
    fn ends(&self, e: usize) -> (usize, usize) {
        let edge = self.edges[e];
        (edge.white, self.whites.len() + self.partner_index(edge.partner))
    }

    fn is_white(&self, v: usize) -> bool {
        v < self.whites.len()
    }

    fn is_grey(&self, v: usize) -> bool {
        v >= self.whites.len() + self.blacks.len()
    }

    /// Combines a white-saturating and a black-saturating matching into one
    /// saturating both, by repeatedly exchanging edges along components of
    /// their symmetric difference.
    pub fn combine(&self, m1: &Matching, m2: &Matching) -> Matching {
        let mut m1: BTreeSet<usize> = m1.iter().copied().collect();
        let mut m2: BTreeSet<usize> = m2.iter().copied().collect();
        loop {
            if m2.is_subset(&m1) {
                return m1.into_iter().collect();
            }
            let sym: Vec<usize> = m1.symmetric_difference(&m2).copied().collect();
            let comps = self.components(&sym);
            let mut progressed = false;
            // cycles, and lines whose leaves both lie on the black/grey side
            for comp in &comps {
                let leaves = self.leaves(comp);
                if leaves.iter().all(|&v| !self.is_white(v)) {
                    for &e in comp {
                        if m1.contains(&e) {
                            m1.remove(&e);
                        } else {
                            m1.insert(e);
                        }
                    }
                    progressed = true;
                    break;
                }
            }
            if progressed {
                continue;
            }
            // lines with a white leaf and a grey leaf
            for comp in &comps {
                if comp.len() < 2 {
                    continue;
                }
                let at_grey = comp.iter().copied().find(|&e| self.is_grey(self.ends(e).1));
                for &e in comp {
                    m2.remove(&e);
                }
                for &e in comp {
                    if m1.contains(&e) && Some(e) != at_grey {
                        m2.insert(e);
                    }
                }
                progressed = true;
                break;
            }
            // every component is a single edge of M1, so M2 ⊆ M1 already held
            assert!(progressed, "symmetric difference of singletons implies containment");
        }
    }

    fn components(&self, edges: &[usize]) -> Vec<Vec<usize>> {
        let mut seen = vec![false; edges.len()];
        let mut out = Vec::new();
        for s in 0..edges.len() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let (a, b) = self.ends(edges[comp[i]]);
                for j in 0..edges.len() {
                    if !seen[j] {
                        let (c, d) = self.ends(edges[j]);
                        if a == c || a == d || b == c || b == d {
                            seen[j] = true;
                            comp.push(j);
                        }
                    }
                }
                i += 1;
            }
            out.push(comp.into_iter().map(|k| edges[k]).collect());
        }
        out
    }

    /// Vertices of degree one in the subgraph spanned by `comp`.
    fn leaves(&self, comp: &[usize]) -> Vec<usize> {
        let mut deg = std::collections::BTreeMap::new();
        for &e in comp {
            let (a, b) = self.ends(e);
            *deg.entry(a).or_insert(0) += 1;
            *deg.entry(b).or_insert(0) += 1;
        }
        deg.into_iter().filter(|&(_, d)| d == 1).map(|(v, _)| v).collect()
    }
}

/// Augmenting-path matching of every left vertex; adjacency lists hold
/// (edge id, right vertex). Returns the matched edge ids, sorted.
fn kuhn(adj: &[Vec<(usize, usize)>], right: usize) -> Option<Matching> {
    let mut owner: Vec<Option<(usize, usize)>> = vec![None; right];
    fn augment(u: usize, adj: &[Vec<(usize, usize)>], owner: &mut [Option<(usize, usize)>], seen: &mut [bool]) -> bool {
        for &(e, v) in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|(w, _)| augment(w, adj, owner, seen)) {
                owner[v] = Some((u, e));
                return true;
            }
        }
        false
    }
    for u in 0..adj.len() {
        let mut seen = vec![false; right];
        if !augment(u, adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut m: Matching = owner.into_iter().flatten().map(|(_, e)| e).collect();
    m.sort_unstable();
    Some(m)
}

/// Decides whether a valency ≥ 3 triangulation admits a cut, returning one
/// if so. Uses matchings on `G_τ` only.
pub fn cut_exists(t: &Triangulation) -> Result<Option<Cut>, CutError> {
    let sq = SurfaceQuiver::new(t)?;
    let g = MatchingGraph::new(t, &sq)?;
    let (Some(m1), Some(m2)) = (g.saturate_white(), g.saturate_black()) else {
        return Ok(None);
    };
    let m = g.combine(&m1, &m2);
    Ok(Some(g.matching_to_cut(&m)?))
}
