//! Closed curves given by crossing sequences, their chains, and graded flips.
//!
//! A curve is a cyclic list of arc crossings `x_0, …, x_{n-1}`. Segment `j`
//! runs inside a triangle `T_j` from `x_j` to `x_{j+1}`, and `T_{j+1}` is the
//! triangle on the other side of `x_{j+1}`. A crossing may name `T_j`
//! explicitly, which is needed when two consecutive arcs bound two common
//! triangles.
//!
//! Inside `T_j`, if the exit side follows the entry side counterclockwise the
//! segment runs along the arrow at the entry corner and contributes `+a`;
//! otherwise it runs against the arrow at the exit corner and contributes
//! `−a`. With this convention a small loop around a puncture, crossing the
//! arcs in rotation order, evaluates to the puncture cycle.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexError, SurfaceQuiver};
use crate::quiver::{graded_isomorphism_via, QuiverError};
use crate::surface::{Corner, Side, SurfaceError, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error("curve is not admissible: {0}")]
    NotAdmissible(String),
    #[error("crossing sequence fits {0} different curves; name the triangles")]
    Ambiguous(usize),
    #[error("flip of `{0}` leaves a puncture of valency below two")]
    ValencyDrop(String),
    #[error("mutation undefined: {0}")]
    MutationUndefined(#[from] QuiverError),
    #[error("transported grading is not a degree-1 map")]
    NotDegreeOne,
    #[error("mutated quiver does not match the quiver of the flipped triangulation")]
    MutationMismatch,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    /// Edge index of the crossed arc.
    pub arc: usize,
    /// Triangle entered at this crossing, if specified.
    pub via: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Curve {
    pub crossings: Vec<Crossing>,
}

impl Curve {
    pub fn from_arcs(arcs: &[usize]) -> Self {
        Self { crossings: arcs.iter().map(|&arc| Crossing { arc, via: None }).collect() }
    }

    /// Rotates the cyclic list so that it starts at position `k`.
    pub fn rotated(&self, k: usize) -> Self {
        let mut crossings = self.crossings.clone();
        let n = crossings.len().max(1);
        crossings.rotate_left(k % n);
        Self { crossings }
    }
}

/// Segment of a curve inside one triangle, between two side positions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub triangle: usize,
    pub entry: usize,
    pub exit: usize,
}

/// A curve with every segment placed in its triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedCurve {
    pub segments: Vec<Segment>,
}

impl ResolvedCurve {
    /// The crossing list, with every triangle named.
    pub fn to_curve(&self, t: &Triangulation) -> Curve {
        let crossings = self
            .segments
            .iter()
            .map(|s| Crossing { arc: t.side_edge(s.triangle, s.entry), via: Some(s.triangle) })
            .collect();
        Curve { crossings }
    }

    /// The same curve traversed backwards.
    pub fn reversed(&self) -> Self {
        let mut segments: Vec<Segment> =
            self.segments.iter().map(|s| Segment { triangle: s.triangle, entry: s.exit, exit: s.entry }).collect();
        segments.reverse();
        Self { segments }
    }
}

/// Places each segment of `curve` in a triangle.
pub fn resolve(t: &Triangulation, curve: &Curve) -> Result<ResolvedCurve, CurveError> {
    let n = curve.crossings.len();
    if n < 2 {
        return Err(CurveError::NotAdmissible("a curve crosses at least two arcs".into()));
    }
    for (j, c) in curve.crossings.iter().enumerate() {
        if c.arc >= t.edges().len() || !t.is_arc(c.arc) {
            return Err(CurveError::NotAdmissible(format!("crossing {j} is not an arc")));
        }
        if c.arc == curve.crossings[(j + 1) % n].arc {
            return Err(CurveError::NotAdmissible(format!("arc `{}` crossed twice in succession", t.edge_id(c.arc))));
        }
    }
    let attempt = |start: Side| -> Option<ResolvedCurve> {
        let mut segments = Vec::with_capacity(n);
        let mut entry = start;
        for j in 0..n {
            let c = &curve.crossings[j];
            if c.via.is_some_and(|v| v != entry.triangle) {
                return None;
            }
            let next = curve.crossings[(j + 1) % n].arc;
            let exit = t.position_in(entry.triangle, next)?;
            segments.push(Segment { triangle: entry.triangle, entry: entry.pos, exit });
            entry = t.opposite_side(Side { triangle: entry.triangle, pos: exit })?;
        }
        (entry == start).then_some(ResolvedCurve { segments })
    };
    let fits: Vec<ResolvedCurve> = t.sides_of(curve.crossings[0].arc).iter().filter_map(|&s| attempt(s)).collect();
    match fits.len() {
        0 => Err(CurveError::NotAdmissible("consecutive arcs do not bound a common triangle".into())),
        1 => Ok(fits.into_iter().next().unwrap()),
        k => Err(CurveError::Ambiguous(k)),
    }
}

/// The chain of a resolved curve in `Q̂(τ)`.
pub fn unreduced_chain(sq: &SurfaceQuiver, curve: &ResolvedCurve) -> Vec<i64> {
    let mut v = vec![0; sq.full.arrows.len()];
    for s in &curve.segments {
        if s.exit == (s.entry + 1) % 3 {
            v[sq.full_arrow_at(Corner { triangle: s.triangle, corner: s.entry }).unwrap()] += 1;
        } else {
            v[sq.full_arrow_at(Corner { triangle: s.triangle, corner: s.exit }).unwrap()] -= 1;
        }
    }
    v
}

/// The chain of a curve in `C₁(τ)`: the unreduced chain pushed through `φ₁`.
pub fn curve_chain(t: &Triangulation, sq: &SurfaceQuiver, curve: &Curve) -> Result<Vec<i64>, CurveError> {
    let r = resolve(t, curve)?;
    Ok(resolved_chain(sq, &r))
}

pub fn resolved_chain(sq: &SurfaceQuiver, curve: &ResolvedCurve) -> Vec<i64> {
    sq.phi(1, &unreduced_chain(sq, curve)).expect("degree 1 is in range")
}

/// Value of a grading on a resolved curve, read through the degree-1
/// extension of the grading to `Q̂(τ)`.
///
/// This equals `d(φ₁(γ̃))` except near a valency-2 puncture one of whose two
/// triangles has a boundary side. There every choice of `φ₁` sends the loop
/// around the puncture to 0, while the loop has value 1 once a flip raises
/// the valency; the extension keeps values invariant under graded flips. For
/// a difference of two degree-1 maps both readings agree.
pub fn evaluate_resolved(sq: &SurfaceQuiver, degrees: &[i64], curve: &ResolvedCurve) -> i64 {
    sq.extend_grading(degrees).iter().zip(unreduced_chain(sq, curve)).map(|(d, v)| d * v).sum()
}

/// Re-expresses a curve after flipping arc `k` of `t`. The curve is rerouted
/// inside the quadrilateral of `k`: it crosses the new diagonal exactly when
/// it enters and leaves the quadrilateral through sides that end up in
/// different new triangles.
pub fn transport_curve(t: &Triangulation, k: usize, curve: &ResolvedCurve) -> Result<ResolvedCurve, CurveError> {
    let [s1, s2] = [t.sides_of(k)[0], t.sides_of(k)[1]];
    let (t1, t2) = (s1.triangle, s2.triangle);
    // old (triangle, pos) of a, b, c, d and their new places; new t1 = (k, b, c), new t2 = (k, d, a)
    let moves = [
        (Side { triangle: t1, pos: (s1.pos + 1) % 3 }, Side { triangle: t2, pos: 2 }),
        (Side { triangle: t1, pos: (s1.pos + 2) % 3 }, Side { triangle: t1, pos: 1 }),
        (Side { triangle: t2, pos: (s2.pos + 1) % 3 }, Side { triangle: t1, pos: 2 }),
        (Side { triangle: t2, pos: (s2.pos + 2) % 3 }, Side { triangle: t2, pos: 1 }),
    ];
    let relocate = |s: Side| -> Side {
        if s.triangle != t1 && s.triangle != t2 {
            return s;
        }
        moves.iter().find(|(old, _)| *old == s).map(|&(_, new)| new).expect("side of the quadrilateral")
    };
    // crossings of arcs other than k, as (side left, side entered)
    let m = curve.segments.len();
    let mut passes = Vec::new();
    for j in 0..m {
        let seg = curve.segments[j];
        let next = curve.segments[(j + 1) % m];
        let from = Side { triangle: seg.triangle, pos: seg.exit };
        if t.side_edge(from.triangle, from.pos) != k {
            passes.push((relocate(from), relocate(Side { triangle: next.triangle, pos: next.entry })));
        }
    }
    if passes.is_empty() {
        return Err(CurveError::NotAdmissible("curve only crosses the flipped arc".into()));
    }
    let mut segments = Vec::new();
    let p = passes.len();
    for j in 0..p {
        let entered = passes[j].1;
        let left = passes[(j + 1) % p].0;
        if entered.triangle == left.triangle {
            if entered.pos == left.pos {
                return Err(CurveError::NotAdmissible("rerouted curve backtracks".into()));
            }
            segments.push(Segment { triangle: entered.triangle, entry: entered.pos, exit: left.pos });
        } else {
            debug_assert!([t1, t2].contains(&entered.triangle) && [t1, t2].contains(&left.triangle));
            segments.push(Segment { triangle: entered.triangle, entry: entered.pos, exit: 0 });
            segments.push(Segment { triangle: left.triangle, entry: 0, exit: left.pos });
        }
    }
    // start at the first segment so that positions line up with the old curve
    Ok(ResolvedCurve { segments })
}

/// A triangulation with a grading of `Q(τ)`.
#[derive(Clone, Debug)]
pub struct GradedTriangulation {
    pub triangulation: Triangulation,
    pub quiver: SurfaceQuiver,
    /// Degrees of the arrows of `Q(τ)`.
    pub degrees: Vec<i64>,
}

impl GradedTriangulation {
    pub fn new(triangulation: Triangulation, degrees: Vec<i64>) -> Result<Self, CurveError> {
        let quiver = SurfaceQuiver::new(&triangulation)?;
        if degrees.len() != quiver.reduced.arrows.len() {
            return Err(
                ComplexError::BasisMismatch { expected: quiver.reduced.arrows.len(), found: degrees.len() }.into()
            );
        }
        Ok(Self { triangulation, quiver, degrees })
    }

    pub fn is_degree_one(&self) -> bool {
        self.quiver.is_degree_one(&self.degrees)
    }

    /// Value of the grading on a curve.
    pub fn evaluate(&self, curve: &Curve) -> Result<i64, CurveError> {
        Ok(evaluate_resolved(&self.quiver, &self.degrees, &resolve(&self.triangulation, curve)?))
    }

    /// Graded flip at arc `k`: flips the triangulation and carries the grading
    /// along the rules of graded left mutation at `k`. Checks that the result
    /// is a degree-1 map and that the mutated graded quiver matches the
    /// quiver of the flipped triangulation with the identity on arcs.
    pub fn flip(&self, k: usize) -> Result<GradedTriangulation, CurveError> {
        let t = &self.triangulation;
        let new_t = t.flip(k).map_err(|e| match e {
            SurfaceError::WouldSelfFold(id) => CurveError::ValencyDrop(id),
            other => other.into(),
        })?;
        if !new_t.has_valency_at_least(2) {
            return Err(CurveError::ValencyDrop(t.edge_id(k).to_string()));
        }
        let old_hat = self.quiver.extend_grading(&self.degrees);
        let new_sq = SurfaceQuiver::new(&new_t)?;
        let [s1, s2] = [t.sides_of(k)[0], t.sides_of(k)[1]];
        let old = |tri: usize, c: usize| {
            self.quiver.full_arrow_at(Corner { triangle: tri, corner: c % 3 }).map(|a| old_hat[a])
        };
        let mut full = vec![0; new_sq.full.arrows.len()];
        for (i, c) in new_sq.full_corners.iter().enumerate() {
            let (tri, pos) = (c.triangle, c.corner);
            full[i] = if tri == s1.triangle || tri == s2.triangle {
                // into k from the side before it, out of k to the side after it
                let (into, out_of) = if tri == s1.triangle {
                    (old(s1.triangle, s1.pos + 2), old(s2.triangle, s2.pos))
                } else {
                    (old(s2.triangle, s2.pos + 2), old(s1.triangle, s1.pos))
                };
                match pos {
                    0 => 1 - into.unwrap(),
                    1 => into.unwrap() + out_of.unwrap(),
                    _ => -out_of.unwrap(),
                }
            } else {
                old(tri, pos).unwrap()
            };
        }
        let degrees: Vec<i64> = new_sq.reduced_to_full.iter().map(|&f| full[f]).collect();
        if !new_sq.is_degree_one(&degrees) && self.is_degree_one() {
            return Err(CurveError::NotDegreeOne);
        }
        let vk = self.quiver.vertex_of_edge[k].unwrap();
        let mutated = self.quiver.graded(&self.degrees).graded_mutate(vk)?;
        let target = new_sq.graded(&degrees);
        let identity: Vec<usize> = (0..mutated.vertex_count()).collect();
        if graded_isomorphism_via(&mutated, &target, &identity).is_none() {
            return Err(CurveError::MutationMismatch);
        }
        Ok(GradedTriangulation { triangulation: new_t, quiver: new_sq, degrees })
    }

    /// Applies graded flips along a sequence of arcs.
    pub fn transport(&self, sequence: &[usize]) -> Result<GradedTriangulation, CurveError> {
        let mut cur = self.clone();
        for &k in sequence {
            cur = cur.flip(k)?;
        }
        Ok(cur)
    }
}

/// A random closed admissible curve, found as the first repeated state of a
/// random walk through triangles.
pub fn random_curve<R: Rng>(t: &Triangulation, rng: &mut R) -> ResolvedCurve {
    let arcs = t.arcs();
    let e = *arcs.choose(rng).unwrap();
    let mut state = *t.sides_of(e).choose(rng).unwrap();
    let mut visited: Vec<Side> = Vec::new();
    let mut exits: Vec<usize> = Vec::new();
    loop {
        if let Some(start) = visited.iter().position(|&s| s == state) {
            let segments = (start..visited.len())
                .map(|j| Segment { triangle: visited[j].triangle, entry: visited[j].pos, exit: exits[j] })
                .collect();
            return ResolvedCurve { segments };
        }
        let choices: Vec<usize> =
            (1..3).map(|k| (state.pos + k) % 3).filter(|&p| t.is_arc(t.side_edge(state.triangle, p))).collect();
        let exit = match choices.choose(rng) {
            Some(&p) => p,
            None => {
                // dead end next to the boundary: restart the walk
                visited.clear();
                exits.clear();
                let e = *arcs.choose(rng).unwrap();
                state = *t.sides_of(e).choose(rng).unwrap();
                continue;
            }
        };
        visited.push(state);
        exits.push(exit);
        state = t.opposite_side(Side { triangle: state.triangle, pos: exit }).unwrap();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;

    #[test]
    fn annulus_core_curve() {
        let t = build::annulus11();
        let sq = SurfaceQuiver::new(&t).unwrap();
        let (a1, a2) = (t.edge_by_id("a1").unwrap(), t.edge_by_id("a2").unwrap());
        assert!(matches!(curve_chain(&t, &sq, &Curve::from_arcs(&[a1, a2])), Err(CurveError::Ambiguous(2))));
        let curve = Curve { crossings: vec![Crossing { arc: a1, via: Some(0) }, Crossing { arc: a2, via: None }] };
        let chain = curve_chain(&t, &sq, &curve).unwrap();
        assert_eq!(chain, vec![1, -1]);
    }

    #[test]
    fn puncture_loop_is_the_cycle() {
        let t = build::punctured_polygon(4);
        let sq = SurfaceQuiver::new(&t).unwrap();
        let ids: Vec<usize> = ["r1", "r2", "r3", "r4"].iter().map(|r| t.edge_by_id(r).unwrap()).collect();
        let chain = curve_chain(&t, &sq, &Curve::from_arcs(&ids)).unwrap();
        assert_eq!(chain, vec![1, 1, 1, 1]);
    }

    #[test]
    fn repeated_crossing_rejected() {
        let t = build::punctured_polygon(4);
        let sq = SurfaceQuiver::new(&t).unwrap();
        let r1 = t.edge_by_id("r1").unwrap();
        assert!(matches!(curve_chain(&t, &sq, &Curve::from_arcs(&[r1, r1])), Err(CurveError::NotAdmissible(_))));
    }

    #[test]
    fn flip_and_back_gives_equivalent_grading() {
        let t = build::punctured_polygon(4);
        let sq = SurfaceQuiver::new(&t).unwrap();
        let mut d = vec![0; 4];
        d[0] = 1;
        let gt = GradedTriangulation::new(t.clone(), d.clone()).unwrap();
        let r1 = t.edge_by_id("r1").unwrap();
        let back = gt.transport(&[r1, r1]).unwrap();
        assert!(back.is_degree_one());
        let w = crate::quiver::gradings_equivalent(&sq.reduced, &back.degrees, &d).unwrap();
        assert!(w.is_some());
        assert!(gt.transport(&[]).unwrap().degrees == d);
    }
}
