//! Cut enumeration and the matching graph against exhaustive search.

mod support {
    pub mod brute;
    pub mod instances;
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use support::brute;
use support::instances::random_triangulation;
use surfcut::build;
use surfcut::complexes::SurfaceQuiver;
use surfcut::cuts::{cut_exists, enumerate_cuts, MatchingGraph};
use surfcut::MarkedSurface;

fn punctured() -> Vec<MarkedSurface> {
    vec![
        MarkedSurface::new(0, vec![3], 1),
        MarkedSurface::new(0, vec![4], 1),
        MarkedSurface::new(0, vec![2], 2),
        MarkedSurface::new(0, vec![3], 2),
        MarkedSurface::new(0, vec![1], 3),
        MarkedSurface::new(0, vec![1, 1], 1),
        MarkedSurface::new(0, vec![2, 1], 1),
        MarkedSurface::new(0, vec![1, 1], 2),
        MarkedSurface::new(1, vec![1], 1),
        MarkedSurface::new(0, vec![], 5),
        MarkedSurface::new(1, vec![], 2),
    ]
}

#[test]
fn enumeration_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for s in punctured() {
        for _ in 0..4 {
            let Some(t) = random_triangulation(&s, 2, &mut rng) else { continue };
            let sq = SurfaceQuiver::new(&t).unwrap();
            if sq.reduced.arrows.len() > 18 {
                continue;
            }
            let ours: Vec<Vec<usize>> = enumerate_cuts(&sq).into_iter().map(|c| c.arrows).collect();
            assert_eq!(ours, brute::cuts(&sq), "{s}");
        }
    }
}

#[test]
fn matchings_biject_with_cuts() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut instances = 0;
    let mut positive = 0;
    for s in punctured() {
        for _ in 0..4 {
            let Some(t) = random_triangulation(&s, 3, &mut rng) else { continue };
            let sq = SurfaceQuiver::new(&t).unwrap();
            let g = MatchingGraph::new(&t, &sq).unwrap();
            let cuts = enumerate_cuts(&sq);
            let matchings = brute::saturating_matchings(&g);
            assert_eq!(cuts.len(), matchings.len(), "{s}");
            let mut images: Vec<Vec<usize>> = cuts.iter().map(|c| g.cut_to_matching(c).unwrap()).collect();
            images.sort();
            assert_eq!(images, matchings);
            for m in &matchings {
                assert_eq!(g.cut_to_matching(&g.matching_to_cut(m).unwrap()).unwrap(), *m);
            }
            let witness = cut_exists(&t).unwrap();
            assert_eq!(witness.is_some(), !cuts.is_empty(), "{s}");
            if let Some(c) = witness {
                assert!(cuts.contains(&c));
                let (w, b, gr) = (g.whites.len(), g.blacks.len(), g.greys.len());
                assert!(b <= w && w <= b + gr);
                assert_eq!(brute::hall_conditions(&g), (true, true));
                positive += 1;
            }
            instances += 1;
        }
    }
    assert!(instances >= 10 && positive >= 5, "{instances} instances, {positive} positive");
}

#[test]
fn closed_surfaces_fail_the_white_count() {
    for t in [build::closed_surface(1), build::closed(1, 2).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let t = build::random_with_valency(&t, 3, 400, &mut rng).unwrap();
        let sq = SurfaceQuiver::new(&t).unwrap();
        let g = MatchingGraph::new(&t, &sq).unwrap();
        assert!(g.greys.is_empty() && g.blacks.len() < g.whites.len());
        assert!(brute::saturating_matchings(&g).is_empty());
        assert!(brute::hall_conditions(&g).1);
    }
}
