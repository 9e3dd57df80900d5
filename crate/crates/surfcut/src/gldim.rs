//! Cut algebras, the shapes of their indecomposable projectives, and the
//! test for global dimension at most 2.
//!
//! For a valency ≥ 3 triangulation `τ` and an admissible cut `d`, the cut
//! algebra `Λ` has quiver `Q(Λ)`, the degree-0 arrows of `Q(τ)`, and
//! relations `∂_α S(τ)` for the degree-1 arrows `α`. Each relation is the
//! difference of the complements of `α` in the (at most two) cycles through
//! it. A complement never contains another degree-1 arrow, so a relation is
//! either a commutativity relation or, when `α` lies on a single cycle, a
//! zero relation.
//!
//! Around an arc `i` with triangles `Δ` (sides `i, j, k`) and `Δ'` (sides
//! `i, j', k'`) write `α: i → j`, `β: j → k`, `γ: k → i` for the arrows of
//! `Δ` and `α'`, `β'`, `γ'` for those of `Δ'`. The point `p` is the corner of
//! `α` (and `γ'`), and `q` the corner of `α'` (and `γ`). The projective
//! `P(i)` is described by which of these arrows lie in `Q(Λ)` and which
//! maximal paths vanish; the projective dimension of the simple `S(i)` is at
//! least 3 exactly in the few configurations singled out by a case analysis
//! over these shapes.
//!
//! `L` shapes are read from the `α` side, which is the triangle holding the
//! first occurrence of `i`; `R` shapes from the `α'` side. `Dᴸ` carries the
//! non-zero hook `β'α'` and `Dᴿ` the non-zero hook `βα`.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::build;
use crate::complexes::{ComplexError, CycleKind, SurfaceQuiver};
use crate::cuts::{enumerate_cuts, Cut, CutError};
use crate::surface::{Corner, MarkedSurface, Side, SurfaceError, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GldimError {
    #[error("puncture {puncture} has valency {valency}; cut algebras are analysed for valency at least 3")]
    ValencyTooLow { puncture: usize, valency: usize },
    #[error("grading is not an admissible cut: {0}")]
    NotACut(String),
    #[error("`{0}` is not an arc")]
    NotInternalArc(String),
    #[error("no good pair exists for {0}")]
    ExcludedSurface(String),
    /// Hooks need not vanish on the closed sphere with four punctures, so the
    /// shape classification does not apply there.
    #[error("projective shapes are not classified on {0}")]
    UnsupportedSurface(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

impl From<CutError> for GldimError {
    fn from(e: CutError) -> Self {
        match e {
            CutError::NotACut(m) => GldimError::NotACut(m),
            CutError::ValencyTooLow { puncture, valency } => GldimError::ValencyTooLow { puncture, valency },
            CutError::NotSaturating => GldimError::NotACut("matching does not saturate".into()),
            CutError::Complex(c) => GldimError::Complex(c),
        }
    }
}

/// `∂_α S(τ)` for a degree-1 arrow `α`, as signed paths. A path lists its
/// arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub arrow: usize,
    pub terms: Vec<(i64, Vec<usize>)>,
}

impl Relation {
    pub fn is_zero_relation(&self) -> bool {
        self.terms.len() == 1
    }
}

/// The cut algebra of a triangulation and a cut, with its local geometry.
#[derive(Clone, Debug)]
pub struct CutAlgebra {
    pub triangulation: Triangulation,
    pub quiver: SurfaceQuiver,
    pub cut: Cut,
    pub degrees: Vec<i64>,
    /// Relations, ordered by arrow index. The potential is taken as the sum
    /// of the triangle cycles minus the sum of the puncture cycles; the signs
    /// play no role in any decision made here.
    pub relations: Vec<Relation>,
}

/// Cyclic derivative of a cycle at one of its arrows: the rest of the cycle,
/// starting after that arrow.
/// The arrows of `cycle` after `a`, in traversal order. Stored cycles already
/// follow the rotation, so each arrow's head is the next one's tail.
fn complement(cycle: &[usize], a: usize) -> Vec<usize> {
    let at = cycle.iter().position(|&x| x == a).unwrap();
    (1..cycle.len()).map(|k| cycle[(at + k) % cycle.len()]).collect()
}

impl CutAlgebra {
    pub fn new(t: &Triangulation, cut: &Cut) -> Result<Self, GldimError> {
        for (p, pt) in t.vertex_structure().punctures() {
            if pt.valency < 3 {
                return Err(GldimError::ValencyTooLow { puncture: p, valency: pt.valency });
            }
        }
        let sq = SurfaceQuiver::new(t)?;
        let degrees = cut.degrees(&sq);
        crate::cuts::check_cut(&sq, &degrees)?;
        let mut relations = Vec::new();
        for &a in &cut.arrows {
            let mut terms = Vec::new();
            for c in sq.cycles.iter().filter(|c| c.arrows.contains(&a)) {
                let sign = if matches!(c.kind, CycleKind::Triangle(_)) { 1 } else { -1 };
                terms.push((sign, complement(&c.arrows, a)));
            }
            relations.push(Relation { arrow: a, terms });
        }
        Ok(Self { triangulation: t.clone(), quiver: sq, cut: cut.clone(), degrees, relations })
    }

    /// Reads the cut off a degree vector first.
    pub fn from_degrees(t: &Triangulation, degrees: &[i64]) -> Result<Self, GldimError> {
        let sq = SurfaceQuiver::new(t)?;
        let cut = Cut::from_degrees(&sq, degrees)?;
        Self::new(t, &cut)
    }

    pub fn in_lambda(&self, a: usize) -> bool {
        self.degrees[a] == 0
    }

    /// Arrows of `Q(Λ)`.
    pub fn lambda_arrows(&self) -> Vec<usize> {
        (0..self.degrees.len()).filter(|&a| self.in_lambda(a)).collect()
    }

    fn lambda_arrow_at(&self, c: Corner) -> Option<usize> {
        self.quiver.arrow_at(c).filter(|&a| self.in_lambda(a))
    }

    fn is_sink(&self, v: usize) -> bool {
        !self.quiver.reduced.arrows.iter().enumerate().any(|(a, x)| x.tail == v && self.in_lambda(a))
    }

    /// Whether a path is one of the zero relations.
    fn is_zero_path(&self, path: &[usize]) -> bool {
        self.relations.iter().any(|r| r.is_zero_relation() && r.terms[0].1 == path)
    }

    /// Longest path of `Q(Λ)` starting with the arrow at corner `c` and
    /// turning around the corner's marked point.
    fn chain_around(&self, c: Corner) -> Vec<usize> {
        let t = &self.triangulation;
        let mut out = Vec::new();
        let mut cur = c;
        while let Some(a) = self.lambda_arrow_at(cur) {
            if out.contains(&a) {
                break;
            }
            out.push(a);
            let next = Side { triangle: cur.triangle, pos: (cur.corner + 1) % 3 };
            match t.opposite_side(next) {
                Some(s) => cur = Corner { triangle: s.triangle, corner: s.pos },
                None => break,
            }
        }
        out
    }

    /// The arrows around an arc.
    pub fn neighbourhood(&self, arc: usize) -> Result<Neighbourhood, GldimError> {
        let t = &self.triangulation;
        let s = t.surface();
        if s.genus == 0 && s.boundary.is_empty() && s.punctures == 4 {
            return Err(GldimError::UnsupportedSurface(s.to_string()));
        }
        let edge = self.quiver.arcs[arc];
        let sides = t.sides_of(edge);
        let [s, s2] = [sides[0], sides[1]];
        let at = |side: Side, k: usize| Corner { triangle: side.triangle, corner: (side.pos + k) % 3 };
        let arrow = |c: Corner| self.quiver.arrow_at(c);
        let vertex = |side: Side, k: usize| self.quiver.vertex_of_edge[t.side_edge(side.triangle, (side.pos + k) % 3)];
        Ok(Neighbourhood {
            arc,
            alpha_corner: at(s, 0),
            alpha_prime_corner: at(s2, 0),
            alpha: arrow(at(s, 0)),
            beta: arrow(at(s, 1)),
            gamma: arrow(at(s, 2)),
            alpha_prime: arrow(at(s2, 0)),
            beta_prime: arrow(at(s2, 1)),
            gamma_prime: arrow(at(s2, 2)),
            j: vertex(s, 1),
            k: vertex(s, 2),
            j_prime: vertex(s2, 1),
            k_prime: vertex(s2, 2),
            beta_corner: at(s, 1),
            beta_prime_corner: at(s2, 1),
        })
    }

    /// Vertex index of an arc given by id.
    pub fn arc_vertex(&self, id: &str) -> Result<usize, GldimError> {
        self.triangulation
            .edge_by_id(id)
            .and_then(|e| self.quiver.vertex_of_edge[e])
            .ok_or_else(|| GldimError::NotInternalArc(id.to_string()))
    }

    /// The maximal path around a marked point from the arrow at `c`, if that
    /// arrow is in `Q(Λ)`, together with whether it vanishes in `Λ`.
    fn maximal_chain(&self, c: Corner) -> Option<(Vec<usize>, bool)> {
        self.lambda_arrow_at(c)?;
        let chain = self.chain_around(c);
        let zero = self.is_zero_path(&chain);
        Some((chain, zero))
    }

    /// `P(x)` is of type `B` read from the arrow at corner `c`.
    fn is_b_from(&self, c: Corner) -> bool {
        matches!(self.maximal_chain(c), Some((_, true)))
    }

    /// The hook starting with the arrow at `c` and continuing in the same
    /// triangle is a non-zero path of `Λ`.
    fn hook_nonzero(&self, c: Corner) -> bool {
        let next = Corner { triangle: c.triangle, corner: (c.corner + 1) % 3 };
        match (self.lambda_arrow_at(c), self.lambda_arrow_at(next)) {
            (Some(a), Some(b)) => !self.is_zero_path(&[a, b]),
            _ => false,
        }
    }

    /// Shape of the indecomposable projective `P(i)`.
    pub fn projective_shape(&self, arc: usize) -> Result<ProjectiveShape, GldimError> {
        let n = self.neighbourhood(arc)?;
        let left = self.maximal_chain(n.alpha_corner);
        let right = self.maximal_chain(n.alpha_prime_corner);
        let hook_l = self.hook_nonzero(n.alpha_corner);
        let hook_r = self.hook_nonzero(n.alpha_prime_corner);
        let pair = |c: Corner| {
            let b = Corner { triangle: c.triangle, corner: (c.corner + 1) % 3 };
            vec![self.quiver.arrow_at(c).unwrap(), self.quiver.arrow_at(b).unwrap()]
        };
        let (kind, paths) = match (&left, &right) {
            (None, None) => (ShapeKind::Simple, vec![]),
            (Some((c, true)), _) => (ShapeKind::BL, vec![c[..c.len() - 1].to_vec()]),
            (_, Some((c, true))) => (ShapeKind::BR, vec![c[..c.len() - 1].to_vec()]),
            (Some((c, false)), None) => (ShapeKind::AL, vec![c.clone()]),
            (None, Some((c, false))) => (ShapeKind::AR, vec![c.clone()]),
            (Some((l, false)), Some((r, false))) => match (hook_l, hook_r) {
                (false, false) => (ShapeKind::C, vec![l.clone(), r.clone()]),
                (false, true) => (ShapeKind::DL, vec![l.clone(), r.clone(), pair(n.alpha_prime_corner)]),
                (true, false) => (ShapeKind::DR, vec![l.clone(), pair(n.alpha_corner), r.clone()]),
                (true, true) => {
                    (ShapeKind::E, vec![l.clone(), pair(n.alpha_corner), r.clone(), pair(n.alpha_prime_corner)])
                }
            },
        };
        Ok(ProjectiveShape { kind, arc, paths })
    }

    /// Whether the simple `S(i)` has projective dimension at least 3.
    pub fn pd_ge_3(&self, arc: usize) -> Result<bool, GldimError> {
        let n = self.neighbourhood(arc)?;
        let shape = self.projective_shape(arc)?;
        let not_sink = |v: Option<usize>| v.is_some_and(|v| !self.is_sink(v));
        Ok(match shape.kind {
            ShapeKind::Simple | ShapeKind::E => false,
            ShapeKind::AL | ShapeKind::DR => self.is_b_from(n.beta_corner),
            ShapeKind::AR | ShapeKind::DL => self.is_b_from(n.beta_prime_corner),
            ShapeKind::C => self.is_b_from(n.beta_corner) || self.is_b_from(n.beta_prime_corner),
            ShapeKind::BL => not_sink(n.k_prime),
            ShapeKind::BR => not_sink(n.k),
        })
    }

    /// Per-arc shapes and projective-dimension flags.
    pub fn report(&self) -> Result<Vec<ArcReport>, GldimError> {
        (0..self.quiver.arcs.len())
            .map(|v| {
                Ok(ArcReport {
                    arc: self.quiver.reduced.vertices[v].clone(),
                    shape: self.projective_shape(v)?.kind,
                    pd_ge_3: self.pd_ge_3(v)?,
                })
            })
            .collect()
    }

    pub fn gldim_le_2(&self) -> Result<bool, GldimError> {
        for v in 0..self.quiver.arcs.len() {
            if self.pd_ge_3(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Arrows and arcs around an arc, following the labels of the module docs.
/// Arrows are `None` when one of their sides is a boundary segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbourhood {
    pub arc: usize,
    pub alpha_corner: Corner,
    pub alpha_prime_corner: Corner,
    pub beta_corner: Corner,
    pub beta_prime_corner: Corner,
    pub alpha: Option<usize>,
    pub beta: Option<usize>,
    pub gamma: Option<usize>,
    pub alpha_prime: Option<usize>,
    pub beta_prime: Option<usize>,
    pub gamma_prime: Option<usize>,
    pub j: Option<usize>,
    pub k: Option<usize>,
    pub j_prime: Option<usize>,
    pub k_prime: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeKind {
    Simple,
    AL,
    AR,
    BL,
    BR,
    C,
    DL,
    DR,
    E,
}

impl ShapeKind {
    /// The shape read from the other side of the arc.
    pub fn mirrored(self) -> Self {
        use ShapeKind::*;
        match self {
            AL => AR,
            AR => AL,
            BL => BR,
            BR => BL,
            DL => DR,
            DR => DL,
            s => s,
        }
    }
}

/// Shape of `P(i)` together with its maximal non-zero paths from `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProjectiveShape {
    pub kind: ShapeKind,
    pub arc: usize,
    pub paths: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcReport {
    pub arc: String,
    pub shape: ShapeKind,
    pub pd_ge_3: bool,
}

/// Whether the cut algebra of `(t, cut)` has global dimension at most 2.
pub fn gldim_le_2(t: &Triangulation, cut: &Cut) -> Result<bool, GldimError> {
    CutAlgebra::new(t, cut)?.gldim_le_2()
}

/// Triangles with exactly one boundary side.
fn one_boundary_side(t: &Triangulation) -> Vec<usize> {
    (0..t.triangles().len()).filter(|&tri| (0..3).filter(|&p| !t.is_arc(t.side_edge(tri, p))).count() == 1).collect()
}

/// Induction hypotheses for a good pair: valency ≥ 3, a triangle with
/// exactly one boundary side, and degree 0 on the arrow of every triangle
/// with a boundary side and a puncture corner.
fn satisfies_hypotheses(t: &Triangulation, sq: &SurfaceQuiver, cut: &Cut) -> bool {
    if !t.has_valency_at_least(3) || one_boundary_side(t).is_empty() {
        return false;
    }
    (0..t.triangles().len()).filter(|&tri| !t.is_internal(tri)).all(|tri| {
        (0..3).all(|c| {
            let corner = Corner { triangle: tri, corner: c };
            match sq.arrow_at(corner) {
                Some(a) if t.is_puncture(t.corner_point(corner)) => cut.arrows.binary_search(&a).is_err(),
                _ => true,
            }
        })
    })
}

/// Inserts a puncture into a triangle with exactly one boundary side, joined
/// to its three corners, and extends the cut: the new arrow at the puncture
/// in the triangle on arc side `i` and the arrow opposite the shared new arc
/// in the triangle on arc side `j` get degree 1, the other new arrows 0.
pub fn insert_puncture(t: &Triangulation, cut: &Cut, tri: usize) -> Result<(Triangulation, Cut), GldimError> {
    let sq = SurfaceQuiver::new(t)?;
    let sides = t.triangles()[tri];
    let b = (0..3).find(|&p| !t.is_arc(sides[p])).expect("triangle has a boundary side");
    // rotate so that the boundary side comes last: [i, j, s]
    let rotated = t.rotated_triangle(tri, (b + 1) % 3)?;
    let old_degree = |c: Corner| {
        // corners of other triangles are unchanged by the rotation
        sq.arrow_at(c).map(|a| i64::from(cut.arrows.binary_search(&a).is_ok()))
    };
    let new_t = build::stellar(&rotated, tri);
    let new_sq = SurfaceQuiver::new(&new_t)?;
    let n_old = t.triangles().len();
    // stellar keeps [i, ub, ua] at `tri` and appends [j, uc, ub], [s, ua, uc]
    let (tri_i, tri_j) = (tri, n_old);
    let mut arrows = Vec::new();
    for (a, c) in new_sq.reduced_to_full.iter().map(|&f| new_sq.full_corners[f]).enumerate() {
        let one = if c.triangle == tri_i {
            c.corner == 1
        } else if c.triangle == tri_j {
            // the shared new arc ub sits at position 2, opposite corner 0
            c.corner == 0
        } else if c.triangle < n_old {
            old_degree(c) == Some(1)
        } else {
            false
        };
        if one {
            arrows.push(a);
        }
    }
    let new_cut = Cut::new(arrows);
    crate::cuts::check_cut(&new_sq, &new_cut.degrees(&new_sq))?;
    Ok((new_t, new_cut))
}

/// Breadth-first search over flips through valency ≥ 2 triangulations for a
/// triangulation and cut accepted by `accept`.
fn search<F>(start: &Triangulation, limit: usize, mut accept: F) -> Option<(Triangulation, Cut)>
where
    F: FnMut(&Triangulation, &SurfaceQuiver, &Cut) -> bool,
{
    let key = |t: &Triangulation| {
        let mut tris: Vec<[usize; 3]> = t
            .triangles()
            .iter()
            .map(|&[a, b, c]| [[a, b, c], [b, c, a], [c, a, b]].into_iter().min().unwrap())
            .collect();
        tris.sort_unstable();
        tris
    };
    let mut seen = HashSet::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(key(start));
    while let Some(t) = queue.pop_front() {
        if let Ok(sq) = SurfaceQuiver::new(&t) {
            if t.has_valency_at_least(3) {
                for cut in enumerate_cuts(&sq) {
                    if accept(&t, &sq, &cut) {
                        return Some((t, cut));
                    }
                }
            }
        }
        if seen.len() >= limit {
            continue;
        }
        for e in t.arcs() {
            if let Ok(next) = t.flip(e) {
                if next.has_valency_at_least(2) && seen.insert(key(&next)) {
                    queue.push_back(next);
                }
            }
        }
    }
    None
}

fn excluded(s: &MarkedSurface) -> bool {
    let disc = s.genus == 0 && s.boundary.len() == 1;
    let n = s.boundary.first().copied().unwrap_or(0);
    s.boundary.is_empty()
        || (disc && s.punctures == 0 && n <= 3)
        || (disc && s.punctures == 1 && n <= 2)
        || (disc && s.punctures == 2 && n == 1)
}

/// A valency ≥ 3 triangulation of `s` with an admissible cut whose cut
/// algebra has global dimension at most 2.
///
/// Punctures are added one at a time to a base pair satisfying the
/// induction hypotheses. The base is unpunctured when possible; the
/// once-punctured square, the twice-punctured digon and triangle and the
/// thrice-punctured monogon get a base found by a search over flips. The
/// once-punctured triangle admits no base and is handled directly.
pub fn construct_good_pair(s: &MarkedSurface) -> Result<(Triangulation, Cut), GldimError> {
    if excluded(s) {
        return Err(GldimError::ExcludedSurface(s.to_string()));
    }
    s.check_admissible()?;
    let disc = s.genus == 0 && s.boundary.len() == 1;
    let n = s.boundary[0];
    if disc && n == 3 && s.punctures == 1 {
        let t = build::punctured_polygon(3);
        let sq = SurfaceQuiver::new(&t)?;
        let found = enumerate_cuts(&sq).into_iter().find(|c| gldim_le_2(&t, c).unwrap_or(false));
        return found.map(|c| (t, c)).ok_or_else(|| GldimError::ExcludedSurface(s.to_string()));
    }
    let base_punctures = match (disc, n, s.punctures) {
        (true, 4, p) if p >= 1 => 1,
        (true, 2 | 3, p) if p >= 2 => 2,
        (true, 1, p) if p >= 3 => 3,
        _ => 0,
    };
    // the hypotheses are only needed when punctures remain to be inserted
    let inserting = base_punctures < s.punctures;
    let base_surface = MarkedSurface::new(s.genus, s.boundary.clone(), base_punctures);
    let start = build::triangulate(&base_surface)?;
    let (mut t, mut cut) = search(&start, 5000, |t, sq, cut| {
        (!inserting || satisfies_hypotheses(t, sq, cut)) && gldim_le_2(t, cut).unwrap_or(false)
    })
    .ok_or_else(|| GldimError::ExcludedSurface(s.to_string()))?;
    for _ in base_punctures..s.punctures {
        let tri = one_boundary_side(&t)[0];
        let (next_t, next_cut) = insert_puncture(&t, &cut, tri)?;
        t = next_t;
        cut = next_cut;
    }
    let (_, edges, triangles) = t.into_parts();
    let t = Triangulation::from_indices(s.clone(), edges, triangles)?;
    Ok((t, cut))
}
