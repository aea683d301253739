//! Seeded synthetic temporal-contact generators for tests, benchmarks, and
//! demos.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::temporal_graph::{Contact, ContactList, NodeId, TemporalGraph};

/// Proximity-style contact list: contact propensity decays polynomially in
/// the node index, so low-index nodes act as hubs, and timestamps are
/// uniform over `[0, 1000)`.
pub fn proximity_contacts(n: usize, n_contacts: usize, seed: u64) -> ContactList {
    assert!(n >= 2, "need at least two nodes");
    assert!(n_contacts >= 1, "need at least one contact");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-0.8)).collect();
    let total: f64 = weights.iter().sum();

    let pick = |rng: &mut ChaCha8Rng| -> NodeId {
        let mut r = rng.random_range(0.0..total);
        for (j, &w) in weights.iter().enumerate() {
            if r < w {
                return j as NodeId;
            }
            r -= w;
        }
        (n - 1) as NodeId
    };

    let mut contacts = Vec::with_capacity(n_contacts);
    while contacts.len() < n_contacts {
        let u = pick(&mut rng);
        let v = pick(&mut rng);
        if u == v {
            continue;
        }
        contacts.push(Contact {
            u,
            v,
            t: rng.random_range(0.0..1000.0),
        });
    }
    ContactList::new(contacts)
        .expect("generated contacts are valid")
        .with_n_hint(n)
}

/// A hub-dominated fixture: node 0 touches a fresh block of leaves in every
/// snapshot, while the remaining nodes exchange only a few scattered edges.
/// Exact singleton spreads make the hub the clear optimum.
pub fn hub_fixture(n: usize, t_windows: usize, seed: u64) -> TemporalGraph {
    assert!(n >= 4 && t_windows >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut snapshots = Vec::with_capacity(t_windows);
    let leaves_per_round = ((n - 1) / t_windows).max(1);
    let mut next_leaf = 1usize;
    for _ in 0..t_windows {
        let mut edges = Vec::new();
        for _ in 0..leaves_per_round {
            if next_leaf < n {
                edges.push((0 as NodeId, next_leaf as NodeId));
                next_leaf += 1;
            }
        }
        // A little background noise among non-hub nodes.
        let u = rng.random_range(1..n as NodeId);
        let v = rng.random_range(1..n as NodeId);
        if u != v {
            edges.push((u, v));
        }
        snapshots.push(edges);
    }
    TemporalGraph::from_snapshot_edges(n, snapshots).expect("fixture edges are valid")
}

/// Small random temporal graph with a bounded contact count, for the exact
/// enumeration oracle.
pub fn random_small_graph(
    n: usize,
    t_windows: usize,
    contacts_per_window: usize,
    seed: u64,
) -> TemporalGraph {
    assert!(n >= 2 && t_windows >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let snapshots: Vec<Vec<(NodeId, NodeId)>> = (0..t_windows)
        .map(|_| {
            (0..contacts_per_window)
                .map(|_| {
                    let u = rng.random_range(0..n as NodeId);
                    let v = (u + 1 + rng.random_range(0..(n as NodeId - 1))) % n as NodeId;
                    (u, v)
                })
                .collect()
        })
        .collect();
    TemporalGraph::from_snapshot_edges(n, snapshots).expect("generated edges are valid")
}
