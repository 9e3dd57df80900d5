//! Certificate-checked comparison of graded triangulations.
//!
//! Two surface cut algebras are derived equivalent when some orientation
//! preserving homeomorphism carries one grading to a grading equivalent to
//! the other. The comparator never searches for such a homeomorphism. It
//! checks a supplied certificate, carries the first grading along it to the
//! second triangulation, and decides equivalence there. When the gradings
//! differ, the difference is a 1-cocycle and its values on a basis of
//! `H₁(C_•(τ))` are reported.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{ComplexError, SurfaceQuiver, Variant};
use crate::curves::{CurveError, GradedTriangulation};
use crate::gldim::{CutAlgebra, GldimError};
use crate::quiver::{graded_isomorphism_via, gradings_equivalent, QuiverError, RFunction};
use crate::surface::{Corner, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompareError {
    #[error("certificate does not verify: {0}")]
    CertificateInvalid(String),
    #[error("flip of `{0}` leaves a puncture of valency below two")]
    ValencyDrop(String),
    #[error("grading {0} is not a surface cut algebra: global dimension exceeds 2")]
    NotSurfaceAlgebra(usize),
    #[error(transparent)]
    Gldim(#[from] GldimError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Evidence relating the first graded triangulation to the second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Both documents describe the same triangulation, possibly with
    /// triangles listed in another order or rotated.
    SameTriangulation,
    /// Arc ids flipped in order, starting from the first triangulation and
    /// ending at the second.
    FlipSequence(Vec<String>),
    /// A quiver isomorphism `Q(τ) → Q(τ′)` given on vertices by arc ids,
    /// standing in for a homeomorphism of the surface.
    Isomorphism(BTreeMap<String, String>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Equivalent,
    InequivalentUnderCertificate,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comparison {
    pub verdict: Verdict,
    /// `r` with `d₁(a) = d₂(a) + r(h(a)) − r(t(a))` on `Q(τ′)`, when equivalent.
    pub witness: Option<RFunction>,
    /// Basis of the free part of `H₁(C_•(τ′))`, as chains of arrows of `Q(τ′)`.
    pub basis: Vec<Vec<i64>>,
    /// Values of the transported first grading minus the second on `basis`.
    pub class: Vec<i64>,
    /// The first grading carried to `Q(τ′)`, when the carrying is unambiguous.
    pub transported: Option<Vec<i64>>,
}

/// Compares two graded triangulations whose gradings are admissible cuts
/// with cut algebras of global dimension at most 2.
pub fn compare(
    first: &GradedTriangulation,
    second: &GradedTriangulation,
    certificate: &Certificate,
) -> Result<Comparison, CompareError> {
    for (i, g) in [first, second].into_iter().enumerate() {
        if !CutAlgebra::from_degrees(&g.triangulation, &g.degrees)?.gldim_le_2()? {
            return Err(CompareError::NotSurfaceAlgebra(i + 1));
        }
    }
    let basis = homology_basis(&second.quiver)?;
    let target = &second.quiver.reduced;
    let transported = match certificate {
        Certificate::SameTriangulation => Some(carry(first, second)?),
        Certificate::FlipSequence(ids) => {
            let t = &first.triangulation;
            let arcs = ids
                .iter()
                .map(|id| {
                    t.edge_by_id(id).ok_or_else(|| CompareError::CertificateInvalid(format!("unknown arc `{id}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let moved = first.transport(&arcs).map_err(|e| match e {
                CurveError::ValencyDrop(id) => CompareError::ValencyDrop(id),
                other => other.into(),
            })?;
            Some(carry(&moved, second)?)
        }
        Certificate::Isomorphism(map) => {
            let phi = vertex_map(first, second, map)?;
            let q1 = first.quiver.reduced.with_degrees(&vec![0; first.degrees.len()])?;
            let q2 = target.with_degrees(&vec![0; second.degrees.len()])?;
            if graded_isomorphism_via(&q1, &q2, &phi).is_none() {
                return Err(CompareError::CertificateInvalid("vertex map is not a quiver isomorphism".into()));
            }
            match carry_along(first, second, &phi) {
                Some(d) => Some(d),
                None => {
                    // parallel arrows with different degrees: some matchings
                    // may give an equivalence and others not
                    let g1 = first.quiver.graded(&first.degrees);
                    let g2 = second.quiver.graded(&second.degrees);
                    let witness = graded_isomorphism_via(&g1, &g2, &phi);
                    let verdict = if witness.is_some() { Verdict::Equivalent } else { Verdict::Unknown };
                    return Ok(Comparison { verdict, witness, basis, class: vec![], transported: None });
                }
            }
        }
    };
    let d1 = transported.expect("every branch carries the grading");
    let witness = gradings_equivalent(target, &d1, &second.degrees)?;
    let delta: Vec<i64> = d1.iter().zip(&second.degrees).map(|(a, b)| a - b).collect();
    let class: Vec<i64> = basis.iter().map(|v| v.iter().zip(&delta).map(|(x, y)| x * y).sum()).collect();
    debug_assert_eq!(witness.is_some(), class.iter().all(|&c| c == 0));
    let verdict = if witness.is_some() { Verdict::Equivalent } else { Verdict::InequivalentUnderCertificate };
    Ok(Comparison { verdict, witness, basis, class, transported: Some(d1) })
}

/// Free basis of `H₁(C_•(τ))`, each vector scaled so its first non-zero entry
/// is positive.
pub fn homology_basis(sq: &SurfaceQuiver) -> Result<Vec<Vec<i64>>, CompareError> {
    let h = sq.chain_complex(Variant::Reduced).homology(1)?;
    Ok(h.free_basis
        .iter()
        .map(|v| {
            let v: Vec<i64> = v.iter().map(|x| x.to_i64().expect("homology representative fits in i64")).collect();
            let sign = v.iter().find(|&&x| x != 0).map_or(1, |x| x.signum());
            v.into_iter().map(|x| sign * x).collect()
        })
        .collect())
}

/// For each triangle of `b`, the triangle of `a` with the same edge ids and
/// the rotation taking positions of `b` to positions of `a`.
pub fn align(a: &Triangulation, b: &Triangulation) -> Option<Vec<(usize, usize)>> {
    if a.surface() != b.surface() || a.edges().len() != b.edges().len() || a.triangles().len() != b.triangles().len() {
        return None;
    }
    let mut edge = Vec::with_capacity(b.edges().len());
    for e in b.edges() {
        let i = a.edge_by_id(&e.id)?;
        if a.edges()[i].kind != e.kind {
            return None;
        }
        edge.push(i);
    }
    let mut used = vec![false; a.triangles().len()];
    let mut out = Vec::with_capacity(b.triangles().len());
    for tri in b.triangles() {
        let mapped = tri.map(|e| edge[e]);
        let found = a.triangles().iter().enumerate().find_map(|(i, t)| {
            if used[i] {
                return None;
            }
            (0..3).find(|&r| (0..3).all(|k| t[(k + r) % 3] == mapped[k])).map(|r| (i, r))
        })?;
        used[found.0] = true;
        out.push(found);
    }
    Some(out)
}

/// Degrees of `from` read on the arrows of `to`, for equal triangulations.
fn carry(from: &GradedTriangulation, to: &GradedTriangulation) -> Result<Vec<i64>, CompareError> {
    let invalid = || CompareError::CertificateInvalid("the triangulations differ".into());
    let alignment = align(&from.triangulation, &to.triangulation).ok_or_else(invalid)?;
    (0..to.degrees.len())
        .map(|a| {
            let c = to.quiver.arrow_corner(a);
            let (tri, r) = alignment[c.triangle];
            let source = from.quiver.arrow_at(Corner { triangle: tri, corner: (c.corner + r) % 3 });
            source.map(|s| from.degrees[s]).ok_or_else(invalid)
        })
        .collect()
}

fn vertex_map(
    first: &GradedTriangulation,
    second: &GradedTriangulation,
    map: &BTreeMap<String, String>,
) -> Result<Vec<usize>, CompareError> {
    let names = |g: &GradedTriangulation| g.quiver.reduced.vertices.clone();
    let (src, dst) = (names(first), names(second));
    let mut phi = Vec::with_capacity(src.len());
    for v in &src {
        let image = map.get(v).ok_or_else(|| CompareError::CertificateInvalid(format!("arc `{v}` has no image")))?;
        let w = dst
            .iter()
            .position(|x| x == image)
            .ok_or_else(|| CompareError::CertificateInvalid(format!("unknown arc `{image}`")))?;
        phi.push(w);
    }
    let mut seen = phi.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != dst.len() || phi.len() != dst.len() {
        return Err(CompareError::CertificateInvalid("vertex map is not a bijection".into()));
    }
    Ok(phi)
}

/// Carries degrees along a vertex isomorphism when every class of parallel
/// arrows has a single degree, so the arrow matching does not matter.
fn carry_along(first: &GradedTriangulation, second: &GradedTriangulation, phi: &[usize]) -> Option<Vec<i64>> {
    let mut classes: BTreeMap<(usize, usize), Vec<i64>> = BTreeMap::new();
    for (a, &d) in first.quiver.reduced.arrows.iter().zip(&first.degrees) {
        classes.entry((phi[a.tail], phi[a.head])).or_default().push(d);
    }
    if classes.values().any(|ds| ds.iter().any(|&d| d != ds[0])) {
        return None;
    }
    second.quiver.reduced.arrows.iter().map(|a| classes.get(&(a.tail, a.head)).map(|ds| ds[0])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build;
    use crate::cuts::enumerate_cuts;
    use crate::surface::MarkedSurface;

    fn graded(t: &Triangulation, degrees: Vec<i64>) -> GradedTriangulation {
        GradedTriangulation::new(t.clone(), degrees).unwrap()
    }

    #[test]
    fn identity_is_equivalent() {
        let t = build::punctured_polygon(4);
        let sq = SurfaceQuiver::new(&t).unwrap();
        let cut = &enumerate_cuts(&sq)[0];
        let g = graded(&t, cut.degrees(&sq));
        let c = compare(&g, &g, &Certificate::SameTriangulation).unwrap();
        assert_eq!(c.verdict, Verdict::Equivalent);
        assert!(c.class.is_empty());
    }

    #[test]
    fn annulus_cuts_differ_on_the_core() {
        // ANN(1,1) has no cycles, so its only cut is zero; two marked points on
        // one boundary component give a triangle cycle
        let s = MarkedSurface::new(0, vec![2, 1], 0);
        let base = build::triangulate(&s).unwrap();
        let t = Triangulation::from_indices(s, base.edges().to_vec(), vec![[5, 2, 4], [0, 1, 3], [5, 0, 1]]).unwrap();
        let c = compare(&graded(&t, vec![0, 1, 0, 0]), &graded(&t, vec![0, 0, 1, 0]), &Certificate::SameTriangulation)
            .unwrap();
        assert_eq!(c.verdict, Verdict::InequivalentUnderCertificate);
        assert_eq!(c.basis, vec![vec![1, 1, 0, 1]]);
        assert_eq!(c.class, vec![1]);
        assert!(c.witness.is_none());
    }

    #[test]
    fn reordered_triangles_align() {
        let t = build::punctured_polygon(4);
        let (s, edges, mut tris) = t.clone().into_parts();
        tris.reverse();
        tris[0].rotate_left(1);
        let u = Triangulation::from_indices(s, edges, tris).unwrap();
        let alignment = align(&t, &u).unwrap();
        assert_eq!(alignment[0].0, 3);
        assert!(align(&t, &t.flip(t.arcs()[0]).unwrap()).is_none());
    }

    #[test]
    fn wrong_flip_sequence_is_rejected() {
        let t = build::punctured_polygon(4);
        let sq = SurfaceQuiver::new(&t).unwrap();
        let cut = &enumerate_cuts(&sq)[0];
        let g = graded(&t, cut.degrees(&sq));
        let cert = Certificate::FlipSequence(vec!["nope".into()]);
        assert!(matches!(compare(&g, &g, &cert), Err(CompareError::CertificateInvalid(_))));
    }
}
