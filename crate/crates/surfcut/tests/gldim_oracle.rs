//! Projective dimension detection against brute-force minimal resolutions.

mod support {
    pub mod algebra;
}

use rand::SeedableRng;
use support::algebra::CutAlgebraOracle;
use surfcut::build;
use surfcut::complexes::SurfaceQuiver;
use surfcut::cuts::{enumerate_cuts, Cut};
use surfcut::gldim::{CutAlgebra, GldimError, ShapeKind};
use surfcut::{MarkedSurface, Triangulation};

fn punctured_square(tris: Vec<[usize; 3]>) -> Triangulation {
    let s = MarkedSurface::new(0, vec![4], 1);
    let base = build::triangulate(&s).unwrap();
    Triangulation::from_indices(s, base.edges().to_vec(), tris).unwrap()
}

/// Arc 0 has an `A`-shaped projective whose neighbour at `j` is `B`-shaped,
/// so the second syzygy is not projective.
#[test]
fn a_shape_with_b_neighbour() {
    let t = punctured_square(vec![[1, 2, 0], [0, 5, 4], [2, 3, 6], [1, 7, 3]]);
    let cut = Cut::new(vec![1, 4]);
    let alg = CutAlgebra::new(&t, &cut).unwrap();
    assert_eq!(alg.projective_shape(0).unwrap().kind, ShapeKind::AL);
    assert!(alg.pd_ge_3(0).unwrap());
    assert!(!alg.gldim_le_2().unwrap());
    let sq = SurfaceQuiver::new(&t).unwrap();
    let oracle = CutAlgebraOracle::new(&sq, &cut.degrees(&sq));
    assert_eq!(oracle.syzygy_dimensions(0, 4), vec![1, 1, 1, 0]);
}

/// Arc 0 has a `B`-shaped projective and `k'` is not a sink.
#[test]
fn b_shape_with_non_sink() {
    let t = punctured_square(vec![[0, 1, 4], [2, 6, 5], [2, 1, 3], [0, 7, 3]]);
    let cut = Cut::new(vec![1, 4]);
    let alg = CutAlgebra::new(&t, &cut).unwrap();
    assert_eq!(alg.projective_shape(0).unwrap().kind, ShapeKind::BL);
    assert!(alg.pd_ge_3(0).unwrap());
    let sq = SurfaceQuiver::new(&t).unwrap();
    let oracle = CutAlgebraOracle::new(&sq, &cut.degrees(&sq));
    assert_eq!(oracle.syzygy_dimensions(0, 4), vec![1, 1, 1, 0]);
}

#[test]
fn star_square_has_small_resolutions() {
    let t = build::punctured_polygon(4);
    let sq = SurfaceQuiver::new(&t).unwrap();
    for cut in enumerate_cuts(&sq) {
        let oracle = CutAlgebraOracle::new(&sq, &cut.degrees(&sq));
        let alg = CutAlgebra::new(&t, &cut).unwrap();
        for v in 0..4 {
            assert!(!oracle.pd_ge_3(v));
            assert!(!alg.pd_ge_3(v).unwrap());
        }
    }
}

/// Hooks need not vanish on the closed sphere with four punctures, and there
/// the brute-force resolutions find simples of projective dimension 3 whose
/// projectives look like `E`.
#[test]
fn four_punctured_sphere_is_out_of_scope() {
    let s = MarkedSurface::new(0, vec![], 4);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let t = build::random_with_valency(&build::triangulate(&s).unwrap(), 3, 300, &mut rng).unwrap();
    let sq = SurfaceQuiver::new(&t).unwrap();
    let cuts = enumerate_cuts(&sq);
    let deep = cuts.iter().any(|cut| {
        let oracle = CutAlgebraOracle::new(&sq, &cut.degrees(&sq));
        (0..sq.arcs.len()).any(|v| oracle.syzygy_dimensions(v, 4) == vec![5, 3, 1, 0])
    });
    assert!(deep);
    let alg = CutAlgebra::new(&t, &cuts[0]).unwrap();
    assert!(matches!(alg.pd_ge_3(0), Err(GldimError::UnsupportedSurface(_))));
}

#[test]
fn detector_matches_oracle_on_small_sample() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for s in
        [MarkedSurface::new(0, vec![4], 1), MarkedSurface::new(0, vec![2], 2), MarkedSurface::new(0, vec![1, 2], 1)]
    {
        let base = build::triangulate(&s).unwrap();
        for k in 0..6 {
            let start = build::random_flips(&base, k, 2, &mut rng);
            let Some(t) = build::random_with_valency(&start, 3, 300, &mut rng) else { continue };
            let sq = SurfaceQuiver::new(&t).unwrap();
            for cut in enumerate_cuts(&sq) {
                let alg = CutAlgebra::new(&t, &cut).unwrap();
                let oracle = CutAlgebraOracle::new(&sq, &cut.degrees(&sq));
                for v in 0..sq.arcs.len() {
                    assert_eq!(alg.pd_ge_3(v).unwrap(), oracle.pd_ge_3(v), "{s} arc {v} cut {:?}", cut.arrows);
                }
            }
        }
    }
}
