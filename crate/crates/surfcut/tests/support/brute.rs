//! Exhaustive enumeration of cuts and saturating matchings.

// each test binary uses a subset of these helpers
#![allow(dead_code)]

use surfcut::complexes::SurfaceQuiver;
use surfcut::cuts::{MatchingGraph, Partner};

/// Every 0/1 map on the arrows with exactly one degree-1 arrow per cycle and
/// degree 0 off the cycles, as sorted lists of degree-1 arrows.
pub fn cuts(sq: &SurfaceQuiver) -> Vec<Vec<usize>> {
    let n = sq.reduced.arrows.len();
    assert!(n <= 20, "too many arrows for exhaustive search");
    let on_cycle: Vec<bool> = (0..n).map(|a| sq.cycles.iter().any(|c| c.arrows.contains(&a))).collect();
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let chosen = |a: usize| mask >> a & 1 == 1;
        if (0..n).any(|a| chosen(a) && !on_cycle[a]) {
            continue;
        }
        if sq.cycles.iter().all(|c| c.arrows.iter().filter(|&&a| chosen(a)).count() == 1) {
            out.push((0..n).filter(|&a| chosen(a)).collect());
        }
    }
    out.sort();
    out
}

fn partner_key(mg: &MatchingGraph, p: Partner) -> usize {
    match p {
        Partner::Black(b) => b,
        Partner::Grey(g) => mg.blacks.len() + g,
    }
}

/// Every matching covering all white and all black vertices, as sorted edge lists.
pub fn saturating_matchings(mg: &MatchingGraph) -> Vec<Vec<usize>> {
    fn go(mg: &MatchingGraph, w: usize, used: &mut Vec<bool>, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if w == mg.whites.len() {
            if used[..mg.blacks.len()].iter().all(|&u| u) {
                let mut m = chosen.clone();
                m.sort();
                out.push(m);
            }
            return;
        }
        for (i, e) in mg.edges.iter().enumerate() {
            let p = partner_key(mg, e.partner);
            if e.white == w && !used[p] {
                used[p] = true;
                chosen.push(i);
                go(mg, w + 1, used, chosen, out);
                chosen.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    let mut used = vec![false; mg.blacks.len() + mg.greys.len()];
    go(mg, 0, &mut used, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Hall's condition from both sides: every set of whites has at least as many
/// neighbours among blacks and greys, and every set of blacks has at least as
/// many white neighbours.
pub fn hall_conditions(mg: &MatchingGraph) -> (bool, bool) {
    let (nw, nb) = (mg.whites.len(), mg.blacks.len());
    assert!(nw <= 16 && nb <= 16, "too many vertices for exhaustive search");
    let white_ok = (1u32..1 << nw).all(|s| {
        let mut nbrs: Vec<usize> =
            mg.edges.iter().filter(|e| s >> e.white & 1 == 1).map(|e| partner_key(mg, e.partner)).collect();
        nbrs.sort();
        nbrs.dedup();
        nbrs.len() >= s.count_ones() as usize
    });
    let black_ok = (1u32..1 << nb).all(|s| {
        let mut nbrs: Vec<usize> = mg
            .edges
            .iter()
            .filter(|e| matches!(e.partner, Partner::Black(b) if s >> b & 1 == 1))
            .map(|e| e.white)
            .collect();
        nbrs.sort();
        nbrs.dedup();
        nbrs.len() >= s.count_ones() as usize
    });
    (white_ok, black_ok)
}
