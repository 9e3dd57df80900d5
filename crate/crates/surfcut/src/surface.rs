//! Marked surfaces, ideal triangulations, validation and flips.
//!
//! A triangulation is stored as a list of triangles, each a triple of edge
//! indices listed counterclockwise. Side `c` of a triangle runs from corner
//! `c - 1` to corner `c`, and corner `c` sits between sides `c` and `c + 1`
//! (indices mod 3). The two occurrences of an arc are glued with opposite
//! traversal directions, so every triangulation given in this form is
//! orientable by construction.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Topological signature of a marked surface.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: u32,
    /// Number of marked points on each boundary component.
    pub boundary: Vec<u32>,
    pub punctures: u32,
}

impl MarkedSurface {
    pub fn new(genus: u32, boundary: Vec<u32>, punctures: u32) -> Self {
        Self { genus, boundary, punctures }
    }

    /// Number of boundary components.
    pub fn components(&self) -> usize {
        self.boundary.len()
    }

    /// Total number of marked points on the boundary.
    pub fn boundary_points(&self) -> u32 {
        self.boundary.iter().sum()
    }

    /// Euler characteristic `2 - 2g - b` of the compact surface.
    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.components() as i64
    }

    /// Number of arcs in any ideal triangulation: `6g + 3b + 3p + c - 6`.
    pub fn expected_arcs(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.components() as i64 + 3 * self.punctures as i64 + self.boundary_points() as i64
            - 6
    }

    /// Number of triangles in any ideal triangulation: `4g + 2b + 2p + c - 4`.
    pub fn expected_triangles(&self) -> i64 {
        4 * self.genus as i64 + 2 * self.components() as i64 + 2 * self.punctures as i64 + self.boundary_points() as i64
            - 4
    }

    /// Rejects the surfaces excluded from the theory.
    pub fn check_admissible(&self) -> Result<(), SurfaceError> {
        if let Some(pos) = self.boundary.iter().position(|&c| c == 0) {
            return Err(SurfaceError::EmptyBoundaryComponent(pos));
        }
        let reason = match (self.genus, self.components(), self.punctures, self.boundary_points()) {
            (0, 0, p, _) if p <= 3 => Some("sphere with at most three punctures"),
            (_, 0, 0, _) => Some("closed surface without marked points"),
            (0, 1, 1, 1) => Some("once-punctured monogon"),
            (0, 1, 0, c) if c <= 3 => Some("unpunctured disc with at most three marked points"),
            _ => None,
        };
        match reason {
            Some(r) => Err(SurfaceError::ExcludedSurface(r.to_string())),
            None => Ok(()),
        }
    }

    /// True when the surface is a disc, possibly punctured.
    pub fn is_disc(&self) -> bool {
        self.genus == 0 && self.components() == 1
    }
}

impl fmt::Display for MarkedSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} boundary={:?} punctures={}", self.genus, self.boundary, self.punctures)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Arc,
    #[serde(alias = "boundary-segment")]
    Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub kind: EdgeKind,
}

/// One side of one triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Side {
    pub triangle: usize,
    pub pos: usize,
}

/// One corner of one triangle; corner `c` lies between sides `c` and `c + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub triangle: usize,
    pub corner: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointKind {
    Puncture,
    Boundary,
}

/// A marked point reconstructed from corner orbits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedPoint {
    pub kind: PointKind,
    /// Number of arc-ends at the point, counted with multiplicity.
    pub valency: usize,
    /// Corners at the point in rotation order. For a puncture this is the
    /// cyclic order of its cycle of arrows; for a boundary point it starts
    /// at the corner whose first side is a boundary segment.
    pub corners: Vec<Corner>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexStructure {
    pub points: Vec<MarkedPoint>,
    /// Marked point of each corner, indexed by `3 * triangle + corner`.
    pub corner_point: Vec<usize>,
    /// Boundary components as cyclic lists of boundary-segment edge indices.
    pub boundary_components: Vec<Vec<usize>>,
}

impl VertexStructure {
    pub fn punctures(&self) -> impl Iterator<Item = (usize, &MarkedPoint)> {
        self.points.iter().enumerate().filter(|(_, p)| p.kind == PointKind::Puncture)
    }

    /// Smallest puncture valency, if there are punctures.
    pub fn min_puncture_valency(&self) -> Option<usize> {
        self.punctures().map(|(_, p)| p.valency).min()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("excluded surface: {0}")]
    ExcludedSurface(String),
    #[error("boundary component {0} has no marked point")]
    EmptyBoundaryComponent(usize),
    #[error("duplicate edge id `{0}`")]
    DuplicateEdge(String),
    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),
    #[error("self-folded triangle {triangle}: edge `{edge}` repeated")]
    SelfFolded { triangle: usize, edge: String },
    #[error("edge `{edge}` occurs {found} times, expected {expected}")]
    Occurrence { edge: String, expected: usize, found: usize },
    #[error("count mismatch: {what} is {found}, expected {expected}")]
    CountMismatch { what: &'static str, expected: i64, found: i64 },
    #[error("triangles do not glue to a connected surface")]
    Disconnected,
    #[error("Euler characteristic mismatch: gluing gives {found}, surface has {expected}")]
    EulerMismatch { expected: i64, found: i64 },
    #[error("gluing gives {found} punctures, surface declares {expected}")]
    PunctureMismatch { expected: u32, found: u32 },
    #[error("gluing gives boundary {found:?}, surface declares {expected:?}")]
    BoundaryMismatch { expected: Vec<u32>, found: Vec<u32> },
    #[error("`{0}` is not an arc")]
    NotAnArc(String),
    #[error("flipping `{0}` would create a self-folded triangle")]
    WouldSelfFold(String),
}

/// A validated ideal triangulation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    surface: MarkedSurface,
    edges: Vec<Edge>,
    triangles: Vec<[usize; 3]>,
    sides: Vec<Vec<Side>>,
    vertices: VertexStructure,
}

impl Triangulation {
    /// Builds and validates a triangulation from edge ids.
    pub fn new(surface: MarkedSurface, edges: Vec<Edge>, triangles: &[[&str; 3]]) -> Result<Self, SurfaceError> {
        let index = edge_index(&edges)?;
        let mut tris = Vec::with_capacity(triangles.len());
        for tri in triangles {
            let mut t = [0; 3];
            for (slot, id) in t.iter_mut().zip(tri) {
                *slot = *index.get(*id).ok_or_else(|| SurfaceError::UnknownEdge(id.to_string()))?;
            }
            tris.push(t);
        }
        Self::from_indices(surface, edges, tris)
    }

    /// Builds and validates a triangulation whose triangles refer to edges by index.
    pub fn from_indices(
        surface: MarkedSurface,
        edges: Vec<Edge>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, SurfaceError> {
        surface.check_admissible()?;
        Self::assemble(surface, edges, triangles)
    }

    /// Validates everything except the exclusion list. Used for intermediate
    /// states of constructions that pass through excluded surfaces.
    pub(crate) fn assemble(
        surface: MarkedSurface,
        edges: Vec<Edge>,
        triangles: Vec<[usize; 3]>,
    ) -> Result<Self, SurfaceError> {
        if let Some(pos) = surface.boundary.iter().position(|&c| c == 0) {
            return Err(SurfaceError::EmptyBoundaryComponent(pos));
        }
        edge_index(&edges)?;
        for (ti, t) in triangles.iter().enumerate() {
            for &e in t {
                if e >= edges.len() {
                    return Err(SurfaceError::UnknownEdge(format!("#{e}")));
                }
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                let e = if t[0] == t[1] || t[0] == t[2] { t[0] } else { t[1] };
                return Err(SurfaceError::SelfFolded { triangle: ti, edge: edges[e].id.clone() });
            }
        }
        let mut sides = vec![Vec::new(); edges.len()];
        for (ti, t) in triangles.iter().enumerate() {
            for (pos, &e) in t.iter().enumerate() {
                sides[e].push(Side { triangle: ti, pos });
            }
        }
        for (e, occ) in sides.iter().enumerate() {
            let expected = match edges[e].kind {
                EdgeKind::Arc => 2,
                EdgeKind::Boundary => 1,
            };
            if occ.len() != expected {
                return Err(SurfaceError::Occurrence { edge: edges[e].id.clone(), expected, found: occ.len() });
            }
        }
        let arcs = edges.iter().filter(|e| e.kind == EdgeKind::Arc).count() as i64;
        if arcs != surface.expected_arcs() {
            return Err(SurfaceError::CountMismatch {
                what: "number of arcs",
                expected: surface.expected_arcs(),
                found: arcs,
            });
        }
        if triangles.len() as i64 != surface.expected_triangles() {
            return Err(SurfaceError::CountMismatch {
                what: "number of triangles",
                expected: surface.expected_triangles(),
                found: triangles.len() as i64,
            });
        }
        if !dual_graph_connected(&triangles, &sides, &edges) {
            return Err(SurfaceError::Disconnected);
        }
        let vertices = reconstruct_vertices(&edges, &triangles, &sides);
        let chi = vertices.points.len() as i64 - edges.len() as i64 + triangles.len() as i64;
        if chi != surface.euler_characteristic() {
            return Err(SurfaceError::EulerMismatch { expected: surface.euler_characteristic(), found: chi });
        }
        let punctures = vertices.punctures().count() as u32;
        if punctures != surface.punctures {
            return Err(SurfaceError::PunctureMismatch { expected: surface.punctures, found: punctures });
        }
        let mut found: Vec<u32> = vertices.boundary_components.iter().map(|c| c.len() as u32).collect();
        let mut expected = surface.boundary.clone();
        found.sort_unstable();
        expected.sort_unstable();
        if found != expected {
            return Err(SurfaceError::BoundaryMismatch { expected, found });
        }
        Ok(Self { surface, edges, triangles, sides, vertices })
    }

    /// Consumes the triangulation and returns its raw data.
    pub fn into_parts(self) -> (MarkedSurface, Vec<Edge>, Vec<[usize; 3]>) {
        (self.surface, self.edges, self.triangles)
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn vertex_structure(&self) -> &VertexStructure {
        &self.vertices
    }

    pub fn edge_id(&self, e: usize) -> &str {
        &self.edges[e].id
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn is_arc(&self, e: usize) -> bool {
        self.edges[e].kind == EdgeKind::Arc
    }

    /// Edge indices of the arcs, in edge order.
    pub fn arcs(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.is_arc(e)).collect()
    }

    /// The sides where edge `e` occurs (two for an arc, one for a boundary segment).
    pub fn sides_of(&self, e: usize) -> &[Side] {
        &self.sides[e]
    }

    /// Edge on side `pos` of triangle `t`.
    pub fn side_edge(&self, t: usize, pos: usize) -> usize {
        self.triangles[t][pos % 3]
    }

    /// The other occurrence of the arc on the given side.
    pub fn opposite_side(&self, side: Side) -> Option<Side> {
        let e = self.triangles[side.triangle][side.pos];
        self.sides[e].iter().copied().find(|&s| s != side)
    }

    /// Position of edge `e` in triangle `t`.
    pub fn position_in(&self, t: usize, e: usize) -> Option<usize> {
        self.triangles[t].iter().position(|&x| x == e)
    }

    /// Marked point at a corner.
    pub fn corner_point(&self, c: Corner) -> usize {
        self.vertices.corner_point[3 * c.triangle + c.corner]
    }

    pub fn point(&self, p: usize) -> &MarkedPoint {
        &self.vertices.points[p]
    }

    pub fn is_puncture(&self, p: usize) -> bool {
        self.vertices.points[p].kind == PointKind::Puncture
    }

    /// A triangle is internal when all three sides are arcs.
    pub fn is_internal(&self, t: usize) -> bool {
        self.triangles[t].iter().all(|&e| self.is_arc(e))
    }

    /// Smallest puncture valency (`None` without punctures).
    pub fn min_puncture_valency(&self) -> Option<usize> {
        self.vertices.min_puncture_valency()
    }

    /// True when every puncture has valency at least `v`.
    pub fn has_valency_at_least(&self, v: usize) -> bool {
        self.min_puncture_valency().is_none_or(|m| m >= v)
    }

    /// Flips arc `e`. The new diagonal keeps the id and index of `e`, and the
    /// two triangles keep their indices.
    pub fn flip(&self, e: usize) -> Result<Triangulation, SurfaceError> {
        if !self.is_arc(e) {
            return Err(SurfaceError::NotAnArc(self.edges[e].id.clone()));
        }
        let [s1, s2] = [self.sides[e][0], self.sides[e][1]];
        let t1 = &self.triangles[s1.triangle];
        let t2 = &self.triangles[s2.triangle];
        let (a, b) = (t1[(s1.pos + 1) % 3], t1[(s1.pos + 2) % 3]);
        let (c, d) = (t2[(s2.pos + 1) % 3], t2[(s2.pos + 2) % 3]);
        if b == c || d == a {
            return Err(SurfaceError::WouldSelfFold(self.edges[e].id.clone()));
        }
        let mut triangles = self.triangles.clone();
        triangles[s1.triangle] = [e, b, c];
        triangles[s2.triangle] = [e, d, a];
        Triangulation::from_indices(self.surface.clone(), self.edges.clone(), triangles)
    }

    /// Applies a sequence of flips given by arc ids.
    pub fn flip_sequence(&self, arcs: &[usize]) -> Result<Triangulation, SurfaceError> {
        let mut t = self.clone();
        for &e in arcs {
            t = t.flip(e)?;
        }
        Ok(t)
    }

    /// Returns a copy with edges renamed.
    pub fn relabeled(&self, rename: impl Fn(&str) -> String) -> Triangulation {
        let mut t = self.clone();
        for e in &mut t.edges {
            e.id = rename(&e.id);
        }
        t
    }

    /// Returns a copy with triangle `t` rotated by `r` positions.
    pub fn rotated_triangle(&self, t: usize, r: usize) -> Result<Triangulation, SurfaceError> {
        let mut triangles = self.triangles.clone();
        let old = triangles[t];
        triangles[t] = [old[r % 3], old[(r + 1) % 3], old[(r + 2) % 3]];
        Triangulation::from_indices(self.surface.clone(), self.edges.clone(), triangles)
    }

    /// The orientation-reversed triangulation (every triple read backwards).
    pub fn mirrored(&self) -> Triangulation {
        let triangles = self.triangles.iter().map(|t| [t[2], t[1], t[0]]).collect();
        Triangulation::from_indices(self.surface.clone(), self.edges.clone(), triangles)
            .expect("mirror of a valid triangulation is valid")
    }

    /// Searches for an orientation-preserving isomorphism onto `other`,
    /// returned as a map from edge indices of `self` to edge indices of `other`.
    pub fn isomorphism_to(&self, other: &Triangulation) -> Option<Vec<usize>> {
        if self.edges.len() != other.edges.len()
            || self.triangles.len() != other.triangles.len()
            || self.surface != other.surface
        {
            return None;
        }
        if self.triangles.is_empty() {
            return None;
        }
        (0..other.triangles.len())
            .flat_map(|u| (0..3).map(move |r| (u, r)))
            .find_map(|(u, r)| self.extend_isomorphism(other, u, r))
    }

    fn extend_isomorphism(&self, other: &Triangulation, u: usize, r: usize) -> Option<Vec<usize>> {
        let mut tri_map: Vec<Option<(usize, usize)>> = vec![None; self.triangles.len()];
        let mut tri_used = vec![false; other.triangles.len()];
        let mut edge_map: Vec<Option<usize>> = vec![None; self.edges.len()];
        let mut queue = VecDeque::new();
        tri_map[0] = Some((u, r));
        tri_used[u] = true;
        queue.push_back(0);
        while let Some(t) = queue.pop_front() {
            let (t2, rot) = tri_map[t].unwrap();
            for pos in 0..3 {
                let e1 = self.triangles[t][pos];
                let pos2 = (pos + rot) % 3;
                let e2 = other.triangles[t2][pos2];
                if self.edges[e1].kind != other.edges[e2].kind {
                    return None;
                }
                match edge_map[e1] {
                    Some(x) if x != e2 => return None,
                    _ => edge_map[e1] = Some(e2),
                }
                if let (Some(n1), Some(n2)) = (
                    self.opposite_side(Side { triangle: t, pos }),
                    other.opposite_side(Side { triangle: t2, pos: pos2 }),
                ) {
                    let rot2 = (n2.pos + 3 - n1.pos) % 3;
                    match tri_map[n1.triangle] {
                        Some(m) if m != (n2.triangle, rot2) => return None,
                        Some(_) => {}
                        None => {
                            if tri_used[n2.triangle] {
                                return None;
                            }
                            tri_used[n2.triangle] = true;
                            tri_map[n1.triangle] = Some((n2.triangle, rot2));
                            queue.push_back(n1.triangle);
                        }
                    }
                }
            }
        }
        let map: Option<Vec<usize>> = edge_map.into_iter().collect();
        let map = map?;
        let mut seen = vec![false; other.edges.len()];
        for &x in &map {
            if seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(map)
    }
}

fn edge_index(edges: &[Edge]) -> Result<HashMap<&str, usize>, SurfaceError> {
    let mut index = HashMap::new();
    for (i, e) in edges.iter().enumerate() {
        if index.insert(e.id.as_str(), i).is_some() {
            return Err(SurfaceError::DuplicateEdge(e.id.clone()));
        }
    }
    Ok(index)
}

fn dual_graph_connected(triangles: &[[usize; 3]], sides: &[Vec<Side>], edges: &[Edge]) -> bool {
    if triangles.is_empty() {
        return false;
    }
    let mut seen = vec![false; triangles.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(t) = stack.pop() {
        for &e in &triangles[t] {
            if edges[e].kind != EdgeKind::Arc {
                continue;
            }
            for s in &sides[e] {
                if !seen[s.triangle] {
                    seen[s.triangle] = true;
                    stack.push(s.triangle);
                }
            }
        }
    }
    seen.into_iter().all(|x| x)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn reconstruct_vertices(edges: &[Edge], triangles: &[[usize; 3]], sides: &[Vec<Side>]) -> VertexStructure {
    let n = 3 * triangles.len();
    let cid = |t: usize, c: usize| 3 * t + c % 3;
    let mut uf = UnionFind((0..n).collect());
    for occ in sides.iter().filter(|o| o.len() == 2) {
        let (a, b) = (occ[0], occ[1]);
        // start(a) ~ end(b) and end(a) ~ start(b)
        uf.union(cid(a.triangle, a.pos + 2), cid(b.triangle, b.pos));
        uf.union(cid(a.triangle, a.pos), cid(b.triangle, b.pos + 2));
    }
    let mut roots: BTreeMap<usize, usize> = BTreeMap::new();
    let mut corner_point = vec![0; n];
    for (c, slot) in corner_point.iter_mut().enumerate() {
        let r = uf.find(c);
        let next = roots.len();
        *slot = *roots.entry(r).or_insert(next);
    }
    // successor of corner (t, c): the corner where side c+1 of t is the earlier side
    let successor = |t: usize, c: usize| -> Option<Corner> {
        let e = triangles[t][(c + 1) % 3];
        let here = Side { triangle: t, pos: (c + 1) % 3 };
        sides[e].iter().find(|&&s| s != here).map(|s| Corner { triangle: s.triangle, corner: s.pos })
    };
    let mut points = Vec::with_capacity(roots.len());
    for p in 0..roots.len() {
        let members: Vec<usize> = (0..n).filter(|&c| corner_point[c] == p).collect();
        let start = members.iter().copied().find(|&c| edges[triangles[c / 3][c % 3]].kind == EdgeKind::Boundary);
        let kind = if start.is_some() { PointKind::Boundary } else { PointKind::Puncture };
        let first = start.unwrap_or(members[0]);
        let mut corners = vec![Corner { triangle: first / 3, corner: first % 3 }];
        loop {
            let last = *corners.last().unwrap();
            match successor(last.triangle, last.corner) {
                Some(next) if 3 * next.triangle + next.corner != first => corners.push(next),
                _ => break,
            }
        }
        debug_assert_eq!(corners.len(), members.len());
        let valency = match kind {
            PointKind::Puncture => corners.len(),
            PointKind::Boundary => corners.len() - 1,
        };
        points.push(MarkedPoint { kind, valency, corners });
    }
    // boundary components: segment s in (t, pos) runs from corner pos-1 to corner pos;
    // the next segment along the boundary starts at the point where s ends.
    let boundary: Vec<usize> = (0..edges.len()).filter(|&e| edges[e].kind == EdgeKind::Boundary).collect();
    let mut starting_at: HashMap<usize, usize> = HashMap::new();
    for &s in &boundary {
        let side = sides[s][0];
        starting_at.insert(corner_point[cid(side.triangle, side.pos + 2)], s);
    }
    let mut seen = vec![false; edges.len()];
    let mut boundary_components = Vec::new();
    for &s in &boundary {
        if seen[s] {
            continue;
        }
        let mut comp = Vec::new();
        let mut cur = s;
        while !seen[cur] {
            seen[cur] = true;
            comp.push(cur);
            let side = sides[cur][0];
            let end = corner_point[cid(side.triangle, side.pos)];
            cur = starting_at[&end];
        }
        boundary_components.push(comp);
    }
    VertexStructure { points, corner_point, boundary_components }
}
