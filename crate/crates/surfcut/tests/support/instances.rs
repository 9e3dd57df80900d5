//! Seeded random triangulations of small surfaces.

// each test binary uses a subset of these helpers
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use surfcut::build;
use surfcut::{MarkedSurface, Triangulation};

/// Small admissible surfaces with at least one boundary component.
pub fn bordered() -> Vec<MarkedSurface> {
    vec![
        MarkedSurface::new(0, vec![4], 1),
        MarkedSurface::new(0, vec![5], 1),
        MarkedSurface::new(0, vec![2], 2),
        MarkedSurface::new(0, vec![3], 2),
        MarkedSurface::new(0, vec![1, 1], 1),
        MarkedSurface::new(0, vec![2, 1], 0),
        MarkedSurface::new(0, vec![2, 2], 1),
        MarkedSurface::new(0, vec![1, 1, 1], 0),
        MarkedSurface::new(0, vec![1, 1, 1], 1),
        MarkedSurface::new(1, vec![1], 0),
        MarkedSurface::new(1, vec![1], 1),
        MarkedSurface::new(1, vec![2], 1),
    ]
}

/// A random triangulation of `s` whose punctures all have valency at least
/// `min_valency`, reached by random flips from the standard one.
pub fn random_triangulation<R: Rng>(s: &MarkedSurface, min_valency: usize, rng: &mut R) -> Option<Triangulation> {
    let base = build::triangulate(s).ok()?;
    let start = build::random_flips(&base, rng.gen_range(0..30), 2, rng);
    build::random_with_valency(&start, min_valency, 400, rng)
}

/// A random triangulation of a random surface from `pool`.
pub fn random_instance<R: Rng>(pool: &[MarkedSurface], min_valency: usize, rng: &mut R) -> Triangulation {
    loop {
        let s = pool.choose(rng).unwrap();
        if let Some(t) = random_triangulation(s, min_valency, rng) {
            return t;
        }
    }
}
