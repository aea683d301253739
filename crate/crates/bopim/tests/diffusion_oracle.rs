//! Monte Carlo spread estimation against the exact enumeration oracle.

use bopim::diffusion::{estimate_spread, exact_spread, exact_spread_capped, SeedVector};
use bopim::synthetic::random_small_graph;
use bopim::temporal_graph::TemporalGraph;

#[test]
fn mc_agrees_with_exact_on_a_small_instance() {
    // 4 nodes, 3 contacts total.
    let g = TemporalGraph::from_snapshot_edges(4, vec![vec![(0, 1), (2, 3)], vec![(1, 2)]])
        .unwrap();
    let s = SeedVector::from_nodes(4, [0]).unwrap();
    let exact: f64 = exact_spread(&g, &s, 0.5).unwrap();
    let est = estimate_spread(&g, &s, 0.5, 10_000, 17).unwrap();
    assert!(
        (est.mean - exact).abs() <= 3.0 * est.std_err,
        "MC {} vs exact {exact} (se {})",
        est.mean,
        est.std_err
    );
}

#[test]
fn superset_spread_dominates_subset() {
    // Exact oracle is monotone in the seed set; MC means agree within
    // combined error.
    for seed in 0..6u64 {
        let g = random_small_graph(6, 2, 3, seed);
        let s_small = SeedVector::from_nodes(6, [0]).unwrap();
        let s_big = SeedVector::from_nodes(6, [0, 3]).unwrap();
        let lambda = 0.4;
        let e_small: f64 = exact_spread_capped(&g, &s_small, lambda, 12).unwrap();
        let e_big: f64 = exact_spread_capped(&g, &s_big, lambda, 12).unwrap();
        assert!(e_big >= e_small - 1e-12, "seed {seed}");

        let m_small = estimate_spread(&g, &s_small, lambda, 10_000, 1000 + seed).unwrap();
        let m_big = estimate_spread(&g, &s_big, lambda, 10_000, 2000 + seed).unwrap();
        let combined = (m_small.std_err.powi(2) + m_big.std_err.powi(2)).sqrt();
        assert!(
            m_big.mean >= m_small.mean - 3.0 * combined,
            "seed {seed}: {} vs {}",
            m_big.mean,
            m_small.mean
        );
    }
}

#[test]
fn mc_tracks_exact_across_random_instances() {
    // A tighter version of the acceptance battery: a handful of random
    // enumerable graphs, each compared at 3 standard errors.
    let mut agreements = 0;
    let total = 8;
    for seed in 0..total {
        let g = random_small_graph(6, 2, 3, 40 + seed);
        let s = SeedVector::from_nodes(6, [seed as u32 % 6]).unwrap();
        let lambda = 0.35;
        let exact: f64 = match exact_spread_capped(&g, &s, lambda, 12) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let est = estimate_spread(&g, &s, lambda, 10_000, 3000 + seed).unwrap();
        if (est.mean - exact).abs() <= 3.0 * est.std_err.max(1e-9) {
            agreements += 1;
        }
    }
    assert!(agreements >= total - 1, "only {agreements}/{total} agreed");
}
