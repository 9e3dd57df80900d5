//! Constructions of standard triangulations and local surgery moves.
//!
//! The moves operate on triangulations whose surface may lie in the excluded
//! list; only the final result of [`triangulate`] is checked against it.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::surface::{Edge, EdgeKind, MarkedSurface, PointKind, SurfaceError, Triangulation};

fn arc(id: impl Into<String>) -> Edge {
    Edge { id: id.into(), kind: EdgeKind::Arc }
}

fn segment(id: impl Into<String>) -> Edge {
    Edge { id: id.into(), kind: EdgeKind::Boundary }
}

fn fresh_id(edges: &[Edge], prefix: &str) -> String {
    (edges.len()..).map(|n| format!("{prefix}{n}")).find(|id| edges.iter().all(|e| &e.id != id)).unwrap()
}

/// Disc with `n` boundary points and one puncture, triangulated by the fan of
/// radii `r1..rn` with triangles `[r_i, r_{i+1}, s_i]`.
pub fn punctured_polygon(n: usize) -> Triangulation {
    assert!(n >= 2, "punctured polygon needs at least two boundary points");
    let mut edges: Vec<Edge> = (1..=n).map(|i| arc(format!("r{i}"))).collect();
    edges.extend((1..=n).map(|i| segment(format!("s{i}"))));
    let triangles = (0..n).map(|i| [i, (i + 1) % n, n + i]).collect();
    Triangulation::from_indices(MarkedSurface::new(0, vec![n as u32], 1), edges, triangles)
        .expect("punctured polygon fan is valid")
}

/// Unpunctured `n`-gon triangulated by the fan of diagonals `d2..d{n-2}` from
/// the first vertex.
pub fn polygon(n: usize) -> Triangulation {
    assert!(n >= 4, "unpunctured polygon needs at least four points");
    let mut edges: Vec<Edge> = (0..n).map(|i| segment(format!("s{i}"))).collect();
    let diag = |j: usize| match j {
        1 => 0,
        j if j == n - 1 => n - 1,
        j => n + j - 2,
    };
    edges.extend((2..n - 1).map(|j| arc(format!("d{j}"))));
    let triangles = (1..n - 1).map(|j| [diag(j), j, diag(j + 1)]).collect();
    Triangulation::from_indices(MarkedSurface::new(0, vec![n as u32], 0), edges, triangles)
        .expect("polygon fan is valid")
}

/// Annulus with one marked point on each boundary component, triangulated by
/// two arcs `a1`, `a2` joining the two points. Its quiver is the Kronecker quiver.
pub fn annulus11() -> Triangulation {
    let edges = vec![arc("a1"), arc("a2"), segment("s1"), segment("s2")];
    Triangulation::new(MarkedSurface::new(0, vec![1, 1], 0), edges, &[["a1", "a2", "s1"], ["a1", "a2", "s2"]])
        .expect("annulus triangulation is valid")
}

/// Closed genus-`g` surface with one puncture, triangulated by the fan of the
/// standard `4g`-gon with boundary word `x1 y1 x1⁻¹ y1⁻¹ …`.
pub fn closed_surface(g: u32) -> Triangulation {
    assert!(g >= 1);
    let g = g as usize;
    let n = 4 * g;
    let mut edges = Vec::new();
    for i in 1..=g {
        edges.push(arc(format!("x{i}")));
        edges.push(arc(format!("y{i}")));
    }
    let side = |j: usize| 2 * (j / 4) + (j % 2);
    edges.extend((2..n - 1).map(|j| arc(format!("d{j}"))));
    let diag = |j: usize| match j {
        1 => side(0),
        j if j == n - 1 => side(n - 1),
        j => 2 * g + j - 2,
    };
    let triangles = (1..n - 1).map(|j| [diag(j), side(j), diag(j + 1)]).collect();
    Triangulation::from_indices(MarkedSurface::new(g as u32, vec![], 1), edges, triangles)
        .expect("commutator fan is valid")
}

/// Sphere with three punctures cut into two triangles. The surface is
/// excluded, so this is only a starting point for further moves.
fn sphere3() -> Triangulation {
    let edges = vec![arc("x"), arc("y"), arc("z")];
    Triangulation::assemble(MarkedSurface::new(0, vec![], 3), edges, vec![[0, 1, 2], [2, 1, 0]])
        .expect("two triangles glue to a sphere")
}

/// Inserts a new puncture inside triangle `t`, joined to its three corners.
pub fn stellar(t: &Triangulation, tri: usize) -> Triangulation {
    let (mut surface, mut edges, mut triangles) = t.clone().into_parts();
    let [x, y, z] = triangles[tri];
    let mut new = [0; 3];
    for slot in &mut new {
        *slot = edges.len();
        edges.push(arc(fresh_id(&edges, "e")));
    }
    let [ua, ub, uc] = new;
    triangles[tri] = [x, ub, ua];
    triangles.push([y, uc, ub]);
    triangles.push([z, ua, uc]);
    surface.punctures += 1;
    Triangulation::assemble(surface, edges, triangles).expect("stellar subdivision is valid")
}

/// Adds a marked point on boundary segment `s`, joined by a new arc to the
/// opposite corner of its triangle.
pub fn split_boundary(t: &Triangulation, s: usize) -> Triangulation {
    assert!(!t.is_arc(s));
    let side = t.sides_of(s)[0];
    let comp = t
        .vertex_structure()
        .boundary_components
        .iter()
        .position(|c| c.contains(&s))
        .expect("segment lies on a boundary component");
    let (mut surface, mut edges, mut triangles) = t.clone().into_parts();
    let tri = triangles[side.triangle];
    let (x, y) = (tri[(side.pos + 1) % 3], tri[(side.pos + 2) % 3]);
    let s2 = edges.len();
    edges.push(segment(fresh_id(&edges, "b")));
    let u = edges.len();
    edges.push(arc(fresh_id(&edges, "e")));
    triangles[side.triangle] = [s, u, y];
    triangles.push([s2, x, u]);
    // component order is not stored, so match by position in the reconstruction
    let old_len = t.vertex_structure().boundary_components[comp].len() as u32;
    let slot = surface.boundary.iter().position(|&c| c == old_len).expect("component size present");
    surface.boundary[slot] += 1;
    Triangulation::assemble(surface, edges, triangles).expect("boundary split is valid")
}

/// Replaces puncture `point` by a boundary component with one marked point.
/// Returns the new triangulation and the index of the new boundary segment.
pub fn open_puncture(t: &Triangulation, point: usize) -> (Triangulation, usize) {
    assert!(t.is_puncture(point));
    let c = t.point(point).corners[0];
    let pos = (c.corner + 1) % 3;
    let e = t.side_edge(c.triangle, pos);
    let other = t.opposite_side(crate::surface::Side { triangle: c.triangle, pos }).unwrap();
    let (mut surface, mut edges, mut triangles) = t.clone().into_parts();
    let e2 = edges.len();
    edges.push(arc(fresh_id(&edges, "e")));
    let s = edges.len();
    edges.push(segment(fresh_id(&edges, "b")));
    triangles[other.triangle][other.pos] = e2;
    triangles.push([e, s, e2]);
    surface.punctures -= 1;
    surface.boundary.push(1);
    let out = Triangulation::assemble(surface, edges, triangles).expect("opening a puncture is valid");
    (out, s)
}

/// Some valid triangulation of `s`, built by surgery moves from a small base.
pub fn triangulate(s: &MarkedSurface) -> Result<Triangulation, SurfaceError> {
    s.check_admissible()?;
    let b = s.components() as u32;
    let mut t = match (s.genus, b, s.punctures) {
        (0, 1, 0) => return Ok(polygon(s.boundary[0] as usize)),
        (0, 1, 1) => return Ok(punctured_polygon(s.boundary[0] as usize)),
        (0, 2, 0) => annulus11(),
        (0, _, _) => sphere3(),
        (g, _, _) => closed_surface(g),
    };
    let mut open_segments = Vec::new();
    if t.vertex_structure().boundary_components.is_empty() {
        while t.vertex_structure().punctures().count() < (s.punctures + b) as usize {
            t = stellar(&t, t.triangles().len() - 1);
        }
        for _ in 0..b {
            let p = t.vertex_structure().punctures().last().map(|(i, _)| i).unwrap();
            let (next, seg) = open_puncture(&t, p);
            t = next;
            open_segments.push(t.edge_id(seg).to_string());
        }
    } else {
        for comp in &t.vertex_structure().boundary_components {
            open_segments.push(t.edge_id(comp[0]).to_string());
        }
    }
    for (seg, &target) in open_segments.iter().zip(&s.boundary) {
        for _ in 1..target {
            let e = t.edge_by_id(seg).unwrap();
            t = split_boundary(&t, e);
        }
    }
    let (_, edges, triangles) = t.into_parts();
    Triangulation::from_indices(s.clone(), edges, triangles)
}

/// Closed surface with one puncture when `punctures == 1`, or a sphere with
/// the given number of punctures (at least four).
pub fn closed(genus: u32, punctures: u32) -> Result<Triangulation, SurfaceError> {
    triangulate(&MarkedSurface::new(genus, vec![], punctures))
}

/// Torus with one puncture and one boundary component carrying one marked
/// point, in a triangulation with two triangles whose sides are all loops at
/// the puncture. Such a triangulation admits no cut.
pub fn torus_without_cuts() -> Triangulation {
    let torus = closed_surface(1);
    let t = stellar(&torus, 1);
    let q = t.vertex_structure().punctures().map(|(i, _)| i).find(|&i| t.point(i).valency == 3).unwrap();
    let ub = (0..t.edges().len())
        .find(|&e| {
            t.is_arc(e)
                && t.sides_of(e).iter().all(|s| s.triangle >= 1)
                && t.sides_of(e).iter().any(|s| s.triangle == 1)
                && t.sides_of(e).iter().any(|s| s.triangle == 2)
        })
        .unwrap();
    debug_assert!(t.point(q).kind == PointKind::Puncture);
    let flipped = t.flip(ub).expect("flip inside the stellar star is legal");
    let q = flipped.vertex_structure().punctures().map(|(i, _)| i).find(|&i| flipped.point(i).valency == 2).unwrap();
    let (out, _) = open_puncture(&flipped, q);
    let (_, edges, triangles) = out.into_parts();
    Triangulation::from_indices(MarkedSurface::new(1, vec![1], 1), edges, triangles).expect("opened torus is valid")
}

/// Applies `steps` random legal flips, keeping only results whose punctures
/// all have valency at least `min_valency`.
pub fn random_flips<R: Rng>(t: &Triangulation, steps: usize, min_valency: usize, rng: &mut R) -> Triangulation {
    let mut cur = t.clone();
    let arcs = cur.arcs();
    for _ in 0..steps {
        let e = *arcs.choose(rng).unwrap();
        if let Ok(next) = cur.flip(e) {
            if next.has_valency_at_least(min_valency) || !cur.has_valency_at_least(min_valency) {
                cur = next;
            }
        }
    }
    cur
}

/// Random walk in the flip graph until every puncture has valency at least
/// `min_valency`; `None` if the budget runs out.
pub fn random_with_valency<R: Rng>(
    t: &Triangulation,
    min_valency: usize,
    budget: usize,
    rng: &mut R,
) -> Option<Triangulation> {
    let mut cur = t.clone();
    let arcs = cur.arcs();
    for _ in 0..budget {
        if cur.has_valency_at_least(min_valency) {
            return Some(cur);
        }
        let e = *arcs.choose(rng).unwrap();
        if let Ok(next) = cur.flip(e) {
            if next.has_valency_at_least(2) {
                cur = next;
            }
        }
    }
    cur.has_valency_at_least(min_valency).then_some(cur)
}
