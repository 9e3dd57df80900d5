//! Quivers, cycle sets and chain complexes attached to a triangulation.
//!
//! # Quivers
//!
//! The unreduced quiver `Q̂(τ)` has one vertex per arc and one arrow per
//! triangle corner whose two sides are arcs, named `T<triangle>.<corner>`.
//! The arrow at corner `c` runs from side `c` to side `c + 1`. Its cycles are
//! the 3-cycles of internal triangles followed by one cycle per puncture,
//! listed in rotation order from the corner of smallest index.
//!
//! At a puncture `p` of valency two, with triangles `Δ1 = (r1, r2, x)` and
//! `Δ2 = (r2, r1, y)` rotated so that `p` sits at corner 0, the arrows
//! `α: r1 → r2` and `β: r2 → r1` at `p` form a 2-cycle. The reduced quiver
//! `Q(τ)` drops `α` and `β`; the cycles of `Δ1`, `Δ2` and `p` are replaced by
//! the single 4-cycle `P1 P2` when both `x` and `y` are arcs, where
//! `P1 = r2 → x → r1` and `P2 = r1 → y → r2`. At valency at least three
//! everywhere the two quivers coincide.
//!
//! # Chain complexes
//!
//! `C_•(τ)` has the arcs in degree 0, the arrows in degree 1 and the cycles in
//! degree 2, with `∂₁(a) = h(a) − t(a)` and `∂₂(ξ)` the sum of the arrows of
//! `ξ`. The map `φ: Ĉ_•(τ) → C_•(τ)` is the identity except at valency-two
//! punctures, where `φ₁(α) = P2` if `Δ2` is internal and `−P1` otherwise,
//! `φ₁(β) = P1` if `Δ1` is internal and `−P2` otherwise, and the three removed
//! cycles go to the merged cycle (or to zero when it does not exist).
//!
//! # The cell complex
//!
//! `X_τ` has one 1-cell per arc, per arrow of `Q(τ)` and per boundary segment
//! of a triangle carrying an arrow. Its 2-cells are the triangles with at
//! least one arrow, traversed `s0, c0, s1, c1, s2, c2` with absent arrows
//! skipped, the punctures of valency at least three, traversed backwards
//! along their cycle, and one merged polygon per valency-two puncture,
//! traversed `r1, r1⁻¹, P2[0], y, P2[1], r2⁻¹, r2, P1[0], x, P1[1]`. This is
//! the union of `Δ1`, `Δ2` and the puncture 2-gon, with the radii kept as
//! spikes so that their endpoints still carry the gluing. An arc cell is
//! traversed forwards at the first occurrence of its arc and backwards at the
//! second. The 0-cells are the classes of cell endpoints under "end of one
//! edge of a polygon = start of the next", which yields two 0-cells per arc.
//!
//! The chain map `ψ: C_•(X_τ) → C_•(τ)` sends a 0-cell to the arc it lies on,
//! an arc cell to 0, an arrow cell to its arrow, a boundary cell to minus the
//! sum of the arrows of its polygon, a triangle or merged polygon to its cycle
//! (zero if there is none) and a puncture polygon to minus its cycle.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{self, HomologyData, IntMatrix};
use crate::quiver::GradedQuiver;
use crate::surface::{Corner, PointKind, Side, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("puncture {puncture} has valency {valency}, need at least {required}")]
    ValencyTooLow { puncture: usize, valency: usize, required: usize },
    #[error("valency-two punctures {0} and {1} share a triangle")]
    InteractingValencyTwo(usize, usize),
    #[error("degree {0} out of range, expected 0, 1 or 2")]
    DegreeOutOfRange(usize),
    #[error("chain has {found} entries, basis has {expected}")]
    BasisMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CycleKind {
    Triangle(usize),
    Puncture(usize),
    /// Merged 4-cycle replacing a valency-two puncture.
    Merged(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle {
    pub kind: CycleKind,
    /// Arrow indices in traversal order.
    pub arrows: Vec<usize>,
}

/// Local data at a puncture of valency two. Arrow indices refer to `Q̂(τ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValencyTwo {
    pub puncture: usize,
    pub delta1: Corner,
    pub delta2: Corner,
    pub alpha: usize,
    pub beta: usize,
    pub p1: Vec<usize>,
    pub p2: Vec<usize>,
    pub delta1_internal: bool,
    pub delta2_internal: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Reduced,
    Unreduced,
}

/// `Q(τ)`, `Q̂(τ)` and their cycle sets.
#[derive(Clone, Debug)]
pub struct SurfaceQuiver {
    /// Edge index of each vertex.
    pub arcs: Vec<usize>,
    /// Vertex of each edge, for arcs.
    pub vertex_of_edge: Vec<Option<usize>>,
    pub full: GradedQuiver,
    pub full_corners: Vec<Corner>,
    pub full_cycles: Vec<Cycle>,
    pub reduced: GradedQuiver,
    pub reduced_to_full: Vec<usize>,
    pub full_to_reduced: Vec<Option<usize>>,
    pub cycles: Vec<Cycle>,
    pub valency_two: Vec<ValencyTwo>,
    corner_arrow: Vec<Option<usize>>,
}

impl SurfaceQuiver {
    /// Builds the quivers of a triangulation whose punctures all have valency
    /// at least two.
    pub fn new(t: &Triangulation) -> Result<Self, ComplexError> {
        for (p, pt) in t.vertex_structure().punctures() {
            if pt.valency < 2 {
                return Err(ComplexError::ValencyTooLow { puncture: p, valency: pt.valency, required: 2 });
            }
        }
        let arcs = t.arcs();
        let mut vertex_of_edge = vec![None; t.edges().len()];
        for (v, &e) in arcs.iter().enumerate() {
            vertex_of_edge[e] = Some(v);
        }
        let mut full = GradedQuiver::new(arcs.iter().map(|&e| t.edge_id(e).to_string()).collect());
        let mut full_corners = Vec::new();
        let mut corner_arrow = vec![None; 3 * t.triangles().len()];
        for (ti, tri) in t.triangles().iter().enumerate() {
            for c in 0..3 {
                let (a, b) = (tri[c], tri[(c + 1) % 3]);
                if let (Some(va), Some(vb)) = (vertex_of_edge[a], vertex_of_edge[b]) {
                    corner_arrow[3 * ti + c] = Some(full.add_arrow(format!("T{ti}.{c}"), va, vb, 0));
                    full_corners.push(Corner { triangle: ti, corner: c });
                }
            }
        }
        let arrow = |tri: usize, c: usize| corner_arrow[3 * tri + c % 3];
        let mut full_cycles = Vec::new();
        for ti in 0..t.triangles().len() {
            if t.is_internal(ti) {
                let arrows = (0..3).map(|c| arrow(ti, c).unwrap()).collect();
                full_cycles.push(Cycle { kind: CycleKind::Triangle(ti), arrows });
            }
        }
        for (p, pt) in t.vertex_structure().punctures() {
            let arrows = pt.corners.iter().map(|c| arrow(c.triangle, c.corner).unwrap()).collect();
            full_cycles.push(Cycle { kind: CycleKind::Puncture(p), arrows });
        }

        let mut valency_two: Vec<ValencyTwo> = Vec::new();
        let mut claimed: HashMap<usize, usize> = HashMap::new();
        for (p, pt) in t.vertex_structure().punctures() {
            if pt.valency != 2 {
                continue;
            }
            let (c1, c2) = (pt.corners[0], pt.corners[1]);
            for tri in [c1.triangle, c2.triangle] {
                if let Some(&other) = claimed.get(&tri) {
                    return Err(ComplexError::InteractingValencyTwo(other, p));
                }
                claimed.insert(tri, p);
            }
            valency_two.push(ValencyTwo {
                puncture: p,
                delta1: c1,
                delta2: c2,
                alpha: arrow(c1.triangle, c1.corner).unwrap(),
                beta: arrow(c2.triangle, c2.corner).unwrap(),
                p1: [1, 2].iter().filter_map(|k| arrow(c1.triangle, c1.corner + k)).collect(),
                p2: [1, 2].iter().filter_map(|k| arrow(c2.triangle, c2.corner + k)).collect(),
                delta1_internal: t.is_internal(c1.triangle),
                delta2_internal: t.is_internal(c2.triangle),
            });
        }

        let removed: Vec<usize> = valency_two.iter().flat_map(|v| [v.alpha, v.beta]).collect();
        let mut reduced = GradedQuiver::new(full.vertices.clone());
        let mut reduced_to_full = Vec::new();
        let mut full_to_reduced = vec![None; full.arrows.len()];
        for (i, a) in full.arrows.iter().enumerate() {
            if !removed.contains(&i) {
                full_to_reduced[i] = Some(reduced.arrows.len());
                reduced_to_full.push(i);
                reduced.arrows.push(a.clone());
            }
        }
        let to_reduced = |arrows: &[usize]| arrows.iter().map(|&a| full_to_reduced[a].unwrap()).collect::<Vec<_>>();
        let mut cycles = Vec::new();
        for cyc in &full_cycles {
            let keep = match cyc.kind {
                CycleKind::Triangle(tri) => !claimed.contains_key(&tri),
                CycleKind::Puncture(p) => t.point(p).valency >= 3,
                CycleKind::Merged(_) => unreachable!(),
            };
            if keep {
                cycles.push(Cycle { kind: cyc.kind, arrows: to_reduced(&cyc.arrows) });
            }
        }
        for v in &valency_two {
            if v.p1.len() == 2 && v.p2.len() == 2 {
                let arrows = to_reduced(&[v.p1.clone(), v.p2.clone()].concat());
                cycles.push(Cycle { kind: CycleKind::Merged(v.puncture), arrows });
            }
        }
        Ok(Self {
            arcs,
            vertex_of_edge,
            full,
            full_corners,
            full_cycles,
            reduced,
            reduced_to_full,
            full_to_reduced,
            cycles,
            valency_two,
            corner_arrow,
        })
    }

    /// `Q̂(τ)` arrow at a corner, if both sides are arcs.
    pub fn full_arrow_at(&self, c: Corner) -> Option<usize> {
        self.corner_arrow[3 * c.triangle + c.corner % 3]
    }

    /// `Q(τ)` arrow at a corner.
    pub fn arrow_at(&self, c: Corner) -> Option<usize> {
        self.full_arrow_at(c).and_then(|a| self.full_to_reduced[a])
    }

    pub fn arrow_corner(&self, reduced_arrow: usize) -> Corner {
        self.full_corners[self.reduced_to_full[reduced_arrow]]
    }

    pub fn quiver(&self, variant: Variant) -> &GradedQuiver {
        match variant {
            Variant::Reduced => &self.reduced,
            Variant::Unreduced => &self.full,
        }
    }

    pub fn cycle_set(&self, variant: Variant) -> &[Cycle] {
        match variant {
            Variant::Reduced => &self.cycles,
            Variant::Unreduced => &self.full_cycles,
        }
    }

    /// True when every cycle of `Q(τ)` has degree sum 1 under `degrees`.
    pub fn is_degree_one(&self, degrees: &[i64]) -> bool {
        degrees.len() == self.reduced.arrows.len()
            && self.cycles.iter().all(|c| c.arrows.iter().map(|&a| degrees[a]).sum::<i64>() == 1)
    }

    /// Reduced grading as a [`GradedQuiver`].
    pub fn graded(&self, degrees: &[i64]) -> GradedQuiver {
        self.reduced.with_degrees(degrees).expect("grading matches the reduced quiver")
    }

    /// Extends a grading of `Q(τ)` to `Q̂(τ)` so that `α + β` has degree 1 and
    /// the triangle cycles through `α` and `β` have degree 1 whenever they
    /// exist in `Q̂(τ)`.
    pub fn extend_grading(&self, degrees: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.full.arrows.len()];
        for (r, &f) in self.reduced_to_full.iter().enumerate() {
            out[f] = degrees[r];
        }
        for v in &self.valency_two {
            let path = |p: &[usize]| p.iter().map(|&a| out[a]).sum::<i64>();
            let (alpha, beta) = if v.delta1_internal {
                let a = 1 - path(&v.p1);
                (a, 1 - a)
            } else if v.delta2_internal {
                let b = 1 - path(&v.p2);
                (1 - b, b)
            } else {
                (0, 1)
            };
            out[v.alpha] = alpha;
            out[v.beta] = beta;
        }
        out
    }

    /// Matrix of `φ_n: Ĉ_n(τ) → C_n(τ)`.
    pub fn phi_matrix(&self, n: usize) -> Result<IntMatrix, ComplexError> {
        match n {
            0 => Ok(IntMatrix::identity(self.arcs.len())),
            1 => {
                let mut m = IntMatrix::zeros(self.reduced.arrows.len(), self.full.arrows.len());
                for (f, r) in self.full_to_reduced.iter().enumerate() {
                    if let Some(r) = r {
                        m.set(*r, f, 1);
                    }
                }
                for v in &self.valency_two {
                    let mut put = |col: usize, path: &[usize], sign: i64| {
                        for &a in path {
                            m.set(self.full_to_reduced[a].unwrap(), col, sign);
                        }
                    };
                    match (v.delta1_internal, v.delta2_internal) {
                        (_, true) => put(v.alpha, &v.p2, 1),
                        (true, false) => put(v.alpha, &v.p1, -1),
                        (false, false) => {}
                    }
                    match (v.delta1_internal, v.delta2_internal) {
                        (true, _) => put(v.beta, &v.p1, 1),
                        (false, true) => put(v.beta, &v.p2, -1),
                        (false, false) => {}
                    }
                }
                Ok(m)
            }
            2 => {
                let mut m = IntMatrix::zeros(self.cycles.len(), self.full_cycles.len());
                let index: HashMap<CycleKind, usize> =
                    self.cycles.iter().enumerate().map(|(i, c)| (c.kind, i)).collect();
                let mut merged_of: HashMap<CycleKind, CycleKind> = HashMap::new();
                for v in &self.valency_two {
                    let merged = CycleKind::Merged(v.puncture);
                    merged_of.insert(CycleKind::Triangle(v.delta1.triangle), merged);
                    merged_of.insert(CycleKind::Triangle(v.delta2.triangle), merged);
                    merged_of.insert(CycleKind::Puncture(v.puncture), merged);
                }
                for (j, c) in self.full_cycles.iter().enumerate() {
                    let target = merged_of.get(&c.kind).copied().unwrap_or(c.kind);
                    if let Some(&i) = index.get(&target) {
                        m.set(i, j, 1);
                    }
                }
                Ok(m)
            }
            n => Err(ComplexError::DegreeOutOfRange(n)),
        }
    }

    /// Applies `φ_n` to an integer chain of `Ĉ_n(τ)`.
    pub fn phi(&self, n: usize, chain: &[i64]) -> Result<Vec<i64>, ComplexError> {
        let m = self.phi_matrix(n)?;
        if chain.len() != m.cols {
            return Err(ComplexError::BasisMismatch { expected: m.cols, found: chain.len() });
        }
        let v: Vec<BigInt> = chain.iter().map(|&x| BigInt::from(x)).collect();
        Ok(m.apply(&v).into_iter().map(|x| i64::try_from(x).expect("small chain")).collect())
    }

    /// `C_•(τ)` or `Ĉ_•(τ)`.
    pub fn chain_complex(&self, variant: Variant) -> ChainComplex {
        let q = self.quiver(variant);
        let cycles = self.cycle_set(variant);
        let mut d1 = IntMatrix::zeros(q.vertex_count(), q.arrows.len());
        for (j, a) in q.arrows.iter().enumerate() {
            if a.head != a.tail {
                d1.data[a.head][j] += 1;
                d1.data[a.tail][j] -= 1;
            }
        }
        let mut d2 = IntMatrix::zeros(q.arrows.len(), cycles.len());
        for (j, c) in cycles.iter().enumerate() {
            for &a in &c.arrows {
                d2.data[a][j] += 1;
            }
        }
        let names = [
            q.vertices.clone(),
            q.arrows.iter().map(|a| a.name.clone()).collect(),
            cycles.iter().map(|c| cycle_name(c.kind)).collect(),
        ];
        ChainComplex::new(names, d1, d2)
    }
}

fn cycle_name(k: CycleKind) -> String {
    match k {
        CycleKind::Triangle(t) => format!("T{t}"),
        CycleKind::Puncture(p) => format!("P{p}"),
        CycleKind::Merged(p) => format!("M{p}"),
    }
}

/// A chain complex concentrated in degrees 0, 1, 2.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub bases: [Vec<String>; 3],
    /// `∂₁: C₁ → C₀`
    pub d1: IntMatrix,
    /// `∂₂: C₂ → C₁`
    pub d2: IntMatrix,
}

pub type HomologyGroup = HomologyData;

impl ChainComplex {
    /// Panics unless `∂₁∘∂₂ = 0`.
    pub fn new(bases: [Vec<String>; 3], d1: IntMatrix, d2: IntMatrix) -> Self {
        assert_eq!(d1.rows, bases[0].len());
        assert_eq!(d1.cols, bases[1].len());
        assert_eq!(d2.rows, bases[1].len());
        assert_eq!(d2.cols, bases[2].len());
        assert!(d1.mul(&d2).is_zero(), "boundary of a boundary is not zero");
        Self { bases, d1, d2 }
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].len()
    }

    /// `∂_n: C_n → C_{n-1}`, with `∂₀` and `∂₃` the zero maps.
    pub fn boundary(&self, n: usize) -> Result<IntMatrix, ComplexError> {
        match n {
            0 => Ok(IntMatrix::zeros(0, self.dim(0))),
            1 => Ok(self.d1.clone()),
            2 => Ok(self.d2.clone()),
            3 => Ok(IntMatrix::zeros(self.dim(2), 0)),
            n => Err(ComplexError::DegreeOutOfRange(n)),
        }
    }

    pub fn homology(&self, n: usize) -> Result<HomologyGroup, ComplexError> {
        if n > 2 {
            return Err(ComplexError::DegreeOutOfRange(n));
        }
        Ok(linalg::homology(&self.boundary(n)?, &self.boundary(n + 1)?, self.dim(n)))
    }
}

/// One polygon edge: a 1-cell traversed forwards (`+1`) or backwards (`−1`).
type Traversal = (usize, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OneCell {
    Arc(usize),
    Arrow(usize),
    Boundary(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwoCell {
    Triangle(usize),
    Puncture(usize),
    Merged(usize),
}

/// The cellular chain complex of `X_τ` with the chain map `ψ` to `C_•(τ)`.
#[derive(Clone, Debug)]
pub struct CwComplex {
    pub complex: ChainComplex,
    pub one_cells: Vec<OneCell>,
    pub two_cells: Vec<TwoCell>,
    /// `ψ_n` as matrices `C_n(X_τ) → C_n(τ)`.
    pub psi: [IntMatrix; 3],
}

impl CwComplex {
    pub fn new(t: &Triangulation, sq: &SurfaceQuiver) -> Self {
        let mut one_cells: Vec<OneCell> = sq.arcs.iter().map(|&e| OneCell::Arc(e)).collect();
        one_cells.extend((0..sq.reduced.arrows.len()).map(OneCell::Arrow));
        let arrow_cell = |a: usize| sq.arcs.len() + a;
        let mut boundary_cell: HashMap<usize, usize> = HashMap::new();
        let arc_traversal = |side: Side| -> Traversal {
            let e = t.side_edge(side.triangle, side.pos);
            let sign = if t.sides_of(e)[0] == side { 1 } else { -1 };
            (sq.vertex_of_edge[e].unwrap(), sign)
        };
        let mut side_traversal = |side: Side, one_cells: &mut Vec<OneCell>| -> Traversal {
            let e = t.side_edge(side.triangle, side.pos);
            if t.is_arc(e) {
                arc_traversal(side)
            } else {
                let id = *boundary_cell.entry(e).or_insert_with(|| {
                    one_cells.push(OneCell::Boundary(e));
                    one_cells.len() - 1
                });
                (id, 1)
            }
        };
        let merged_triangles: Vec<usize> =
            sq.valency_two.iter().flat_map(|v| [v.delta1.triangle, v.delta2.triangle]).collect();
        let mut polygons: Vec<(TwoCell, Vec<Traversal>)> = Vec::new();
        for ti in 0..t.triangles().len() {
            if merged_triangles.contains(&ti) {
                continue;
            }
            let corners: Vec<Option<usize>> = (0..3).map(|c| sq.arrow_at(Corner { triangle: ti, corner: c })).collect();
            if corners.iter().all(Option::is_none) {
                continue;
            }
            let mut poly = Vec::new();
            for (c, corner) in corners.iter().enumerate() {
                poly.push(side_traversal(Side { triangle: ti, pos: c }, &mut one_cells));
                if let Some(a) = *corner {
                    poly.push((arrow_cell(a), 1));
                }
            }
            polygons.push((TwoCell::Triangle(ti), poly));
        }
        for (p, pt) in t.vertex_structure().punctures() {
            if pt.valency < 3 {
                continue;
            }
            let poly = pt.corners.iter().rev().map(|&c| (arrow_cell(sq.arrow_at(c).unwrap()), -1)).collect();
            polygons.push((TwoCell::Puncture(p), poly));
        }
        for v in &sq.valency_two {
            let (d1, d2) = (v.delta1, v.delta2);
            let at = |c: Corner, k: usize| sq.arrow_at(Corner { triangle: c.triangle, corner: (c.corner + k) % 3 });
            let side = |c: Corner, k: usize| Side { triangle: c.triangle, pos: (c.corner + k) % 3 };
            let mut poly = vec![arc_traversal(side(d1, 0)), arc_traversal(side(d2, 1))];
            poly.extend(at(d2, 1).map(|a| (arrow_cell(a), 1)));
            poly.push(side_traversal(side(d2, 2), &mut one_cells));
            poly.extend(at(d2, 2).map(|a| (arrow_cell(a), 1)));
            poly.push(arc_traversal(side(d2, 0)));
            poly.push(arc_traversal(side(d1, 1)));
            poly.extend(at(d1, 1).map(|a| (arrow_cell(a), 1)));
            poly.push(side_traversal(side(d1, 2), &mut one_cells));
            poly.extend(at(d1, 2).map(|a| (arrow_cell(a), 1)));
            polygons.push((TwoCell::Merged(v.puncture), poly));
        }

        // 0-cells: endpoint slots 2j (tail) and 2j + 1 (head) of each 1-cell
        let mut parent: Vec<usize> = (0..2 * one_cells.len()).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            parent[x] = r;
            r
        }
        let start = |(c, s): Traversal| if s > 0 { 2 * c } else { 2 * c + 1 };
        let end = |(c, s): Traversal| if s > 0 { 2 * c + 1 } else { 2 * c };
        for (_, poly) in &polygons {
            for k in 0..poly.len() {
                let (a, b) = (find(&mut parent, end(poly[k])), find(&mut parent, start(poly[(k + 1) % poly.len()])));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut zero_index: HashMap<usize, usize> = HashMap::new();
        let mut slot_cell = vec![0; parent.len()];
        for (slot, cell) in slot_cell.iter_mut().enumerate() {
            let r = find(&mut parent, slot);
            let next = zero_index.len();
            *cell = *zero_index.entry(r).or_insert(next);
        }
        let zero_count = zero_index.len();
        let mut zero_arc: Vec<Option<usize>> = vec![None; zero_count];
        for v in 0..sq.arcs.len() {
            for slot in [2 * v, 2 * v + 1] {
                let z = slot_cell[slot];
                assert!(zero_arc[z].is_none_or(|w| w == v), "0-cell meets two arcs");
                zero_arc[z] = Some(v);
            }
        }

        let mut d1 = IntMatrix::zeros(zero_count, one_cells.len());
        for j in 0..one_cells.len() {
            let (tail, head) = (slot_cell[2 * j], slot_cell[2 * j + 1]);
            if tail != head {
                d1.data[head][j] += 1;
                d1.data[tail][j] -= 1;
            }
        }
        let mut d2 = IntMatrix::zeros(one_cells.len(), polygons.len());
        for (j, (_, poly)) in polygons.iter().enumerate() {
            for &(c, s) in poly {
                d2.data[c][j] += s;
            }
        }
        let names = [
            (0..zero_count).map(|z| format!("v{z}")).collect(),
            one_cells.iter().map(|c| format!("{c:?}")).collect(),
            polygons.iter().map(|(c, _)| format!("{c:?}")).collect(),
        ];
        let complex = ChainComplex::new(names, d1, d2);

        let mut psi0 = IntMatrix::zeros(sq.arcs.len(), zero_count);
        for (z, v) in zero_arc.iter().enumerate() {
            psi0.set(v.expect("every 0-cell lies on an arc"), z, 1);
        }
        let mut psi1 = IntMatrix::zeros(sq.reduced.arrows.len(), one_cells.len());
        for (j, c) in one_cells.iter().enumerate() {
            if let OneCell::Arrow(a) = c {
                psi1.set(*a, j, 1);
            }
        }
        for (_, poly) in &polygons {
            let arrows: Vec<usize> = poly
                .iter()
                .filter(|&&(c, _)| matches!(one_cells[c], OneCell::Arrow(_)))
                .map(|&(c, _)| c - sq.arcs.len())
                .collect();
            for &(c, _) in poly {
                if let OneCell::Boundary(_) = one_cells[c] {
                    for &a in &arrows {
                        psi1.data[a][c] -= 1;
                    }
                }
            }
        }
        let cycle_index: HashMap<CycleKind, usize> = sq.cycles.iter().enumerate().map(|(i, c)| (c.kind, i)).collect();
        let mut psi2 = IntMatrix::zeros(sq.cycles.len(), polygons.len());
        for (j, (cell, _)) in polygons.iter().enumerate() {
            let (kind, sign) = match *cell {
                TwoCell::Triangle(ti) => (CycleKind::Triangle(ti), 1),
                TwoCell::Puncture(p) => (CycleKind::Puncture(p), -1),
                TwoCell::Merged(p) => (CycleKind::Merged(p), 1),
            };
            if let Some(&i) = cycle_index.get(&kind) {
                psi2.set(i, j, sign);
            }
        }
        let two_cells = polygons.into_iter().map(|(c, _)| c).collect();
        Self { complex, one_cells, two_cells, psi: [psi0, psi1, psi2] }
    }
}

/// True when the square `target.∂_n ∘ f_n = f_{n-1} ∘ source.∂_n` commutes for
/// `n = 1, 2`.
pub fn is_chain_map(source: &ChainComplex, target: &ChainComplex, f: [&IntMatrix; 3]) -> bool {
    target.d1.mul(f[1]) == f[0].mul(&source.d1) && target.d2.mul(f[2]) == f[1].mul(&source.d2)
}

/// Ranks of `H_0`, `H_1`, `H_2`.
pub fn betti(c: &ChainComplex) -> [usize; 3] {
    [0, 1, 2].map(|n| c.homology(n).expect("degree in range").rank)
}

/// Number of boundary components, from the vertex structure.
pub fn boundary_components(t: &Triangulation) -> usize {
    t.vertex_structure().boundary_components.len()
}

/// True for a disc with one puncture and two boundary points triangulated by
/// its two radii. Its comparison map fails to be a chain map in degree 1.
pub fn is_bare_punctured_digon(t: &Triangulation) -> bool {
    let s = t.surface();
    s.genus == 0
        && s.boundary == [2]
        && s.punctures == 1
        && t.vertex_structure().points.iter().any(|p| p.kind == PointKind::Puncture && p.valency == 2)
}

/// `Σ d(a)·v_a`.
pub fn evaluate(degrees: &[i64], chain: &[i64]) -> Result<i64, ComplexError> {
    if degrees.len() != chain.len() {
        return Err(ComplexError::BasisMismatch { expected: degrees.len(), found: chain.len() });
    }
    Ok(degrees.iter().zip(chain).map(|(d, v)| d * v).sum())
}

/// Converts an integer chain to machine integers.
pub fn small_chain(v: &[BigInt]) -> Vec<i64> {
    v.iter().map(|x| i64::try_from(x).unwrap_or_else(|_| panic!("chain entry {x} too large"))).collect()
}

/// True when the chain vanishes.
pub fn is_zero_chain(v: &[BigInt]) -> bool {
    v.iter().all(Zero::is_zero)
}
