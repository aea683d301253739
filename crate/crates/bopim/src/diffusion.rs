//! Susceptible-Infected diffusion on a temporal graph.
//!
//! The simulation is synchronous with one-step latency: a node infected
//! while snapshot `t` is processed only starts transmitting at snapshot
//! `t + 1`. Each snapshot edge with exactly one infected endpoint grants a
//! single independent Bernoulli(lambda) transmission attempt.
//!
//! Spread is estimated by Monte Carlo over seeded, counter-split RNG
//! substreams, which makes the estimate bit-identical for a given master
//! seed regardless of how replicates are scheduled across threads. For
//! small instances [`exact_spread`] enumerates every activation outcome of
//! the seed-reachable contacts and serves as the test oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::scalar::Scalar;
use crate::temporal_graph::{NodeId, TemporalGraph};

/// A seed set encoded as a binary vector of length `n` with exactly `k`
/// ones, stored as the sorted list of seeded node ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeedVector {
    n: usize,
    nodes: Vec<NodeId>,
}

#[derive(Debug, Error, PartialEq)]
pub enum SeedError {
    #[error("seed set must contain at least one node")]
    Empty,
    #[error("seed set has {k} nodes but the graph has only {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("seed node {node} is out of range for {n} nodes")]
    NodeOutOfRange { node: NodeId, n: usize },
    #[error("seed node {node} appears more than once")]
    DuplicateNode { node: NodeId },
}

impl SeedVector {
    pub fn from_nodes(
        n: usize,
        nodes: impl IntoIterator<Item = NodeId>,
    ) -> Result<Self, SeedError> {
        let mut nodes: Vec<NodeId> = nodes.into_iter().collect();
        nodes.sort_unstable();
        if nodes.is_empty() {
            return Err(SeedError::Empty);
        }
        for w in nodes.windows(2) {
            if w[0] == w[1] {
                return Err(SeedError::DuplicateNode { node: w[0] });
            }
        }
        if nodes.len() > n {
            return Err(SeedError::KTooLarge { k: nodes.len(), n });
        }
        if let Some(&last) = nodes.last() {
            if last as usize >= n {
                return Err(SeedError::NodeOutOfRange { node: last, n });
            }
        }
        Ok(SeedVector { n, nodes })
    }

    /// The seed set extended by one node (for greedy construction).
    pub fn with_node(&self, node: NodeId) -> Result<Self, SeedError> {
        let mut nodes = self.nodes.clone();
        nodes.push(node);
        SeedVector::from_nodes(self.n, nodes)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.nodes.len()
    }

    /// Sorted seeded node ids.
    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.nodes.binary_search(&node).is_ok()
    }

    /// Dense 0/1 view, mostly for regression design rows.
    pub fn to_dense(&self) -> Vec<u8> {
        let mut x = vec![0u8; self.n];
        for &j in &self.nodes {
            x[j as usize] = 1;
        }
        x
    }
}

/// Monte Carlo estimate of the expected spread.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpreadEstimate<F> {
    pub mean: F,
    pub std_err: F,
    pub n_sims: u32,
}

#[derive(Debug, Error, PartialEq)]
pub enum DiffusionError {
    #[error("infection probability {0} is outside [0, 1]")]
    InvalidLambda(f64),
    #[error("seed vector is sized for {seed_n} nodes but the graph has {graph_n}")]
    GraphMismatch { seed_n: usize, graph_n: usize },
    #[error("{found} seed-reachable contacts exceed the enumeration cap of {cap}")]
    TooManyContacts { found: usize, cap: u32 },
    #[error("n_sims must be at least 1")]
    NoReplicates,
    #[error(transparent)]
    Seed(#[from] SeedError),
}

fn check_inputs<F: Scalar>(
    g: &TemporalGraph,
    s: &SeedVector,
    lambda: F,
) -> Result<(), DiffusionError> {
    if !(lambda >= F::zero() && lambda <= F::one()) {
        return Err(DiffusionError::InvalidLambda(
            lambda.to_f64().unwrap_or(f64::NAN),
        ));
    }
    if s.n() != g.n() {
        return Err(DiffusionError::GraphMismatch {
            seed_n: s.n(),
            graph_n: g.n(),
        });
    }
    Ok(())
}

/// Run one SI cascade and return the number of infected nodes after the
/// final snapshot.
pub fn simulate_si<F: Scalar, R: Rng + ?Sized>(
    g: &TemporalGraph,
    s: &SeedVector,
    lambda: F,
    rng: &mut R,
) -> Result<u32, DiffusionError> {
    check_inputs(g, s, lambda)?;
    let mut infected = vec![false; g.n()];
    for &j in s.nodes() {
        infected[j as usize] = true;
    }
    let mut count = s.k() as u32;
    let mut newly: Vec<NodeId> = Vec::new();

    for snap in g.snapshots() {
        newly.clear();
        for &(u, v) in snap {
            let iu = infected[u as usize];
            let iv = infected[v as usize];
            if iu != iv {
                // Exactly one endpoint was infected before this round, so a
                // single directed attempt is live.
                if F::unit_uniform(rng) < lambda {
                    newly.push(if iu { v } else { u });
                }
            }
        }
        for &w in &newly {
            if !infected[w as usize] {
                infected[w as usize] = true;
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Monte Carlo estimate of the expected spread over `n_sims` replicates.
///
/// Replicate `i` runs on ChaCha stream `i` of `master_seed`, so the result
/// is reproducible bit-for-bit at any thread count.
pub fn estimate_spread<F: Scalar>(
    g: &TemporalGraph,
    s: &SeedVector,
    lambda: F,
    n_sims: u32,
    master_seed: u64,
) -> Result<SpreadEstimate<F>, DiffusionError> {
    check_inputs(g, s, lambda)?;
    if n_sims < 1 {
        return Err(DiffusionError::NoReplicates);
    }

    let counts: Vec<u32> = (0..n_sims)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
            rng.set_stream(i as u64);
            simulate_si(g, s, lambda, &mut rng).expect("inputs validated above")
        })
        .collect();

    // Reduce sequentially so the estimate does not depend on the join order.
    let total: u64 = counts.iter().map(|&c| c as u64).sum();
    let nf = F::cast_usize(n_sims as usize);
    let mean = F::from_u64(total).expect("count fits scalar") / nf;
    let std_err = if n_sims == 1 {
        F::zero()
    } else {
        let mut ss = F::zero();
        for &c in &counts {
            let d = F::from_u32(c).expect("count fits scalar") - mean;
            ss += d * d;
        }
        (ss / (nf - F::one()) / nf).sqrt()
    };
    Ok(SpreadEstimate {
        mean,
        std_err,
        n_sims,
    })
}

/// Default cap on the number of enumerated contacts in [`exact_spread`].
pub const EXACT_SPREAD_CONTACT_CAP: u32 = 20;

/// Exact expected spread by enumeration of all `2^C` activation outcomes of
/// the `C` seed-reachable contacts. Fails once `C` exceeds `cap`.
pub fn exact_spread_capped<F: Scalar>(
    g: &TemporalGraph,
    s: &SeedVector,
    lambda: F,
    cap: u32,
) -> Result<F, DiffusionError> {
    check_inputs(g, s, lambda)?;

    // A contact is relevant when, in some outcome, one endpoint can be
    // infected before its round while the other endpoint is not certainly
    // infected (only seeds are certain). `possibly` tracks nodes that can be
    // infected strictly before the round being scanned.
    let mut possibly = vec![false; g.n()];
    for &j in s.nodes() {
        possibly[j as usize] = true;
    }
    // (round, u, v) in scan order.
    let mut relevant: Vec<(usize, NodeId, NodeId)> = Vec::new();
    for (round, snap) in g.snapshots().iter().enumerate() {
        let mut newly: Vec<NodeId> = Vec::new();
        for &(u, v) in snap {
            let pu = possibly[u as usize];
            let pv = possibly[v as usize];
            let su = s.contains(u);
            let sv = s.contains(v);
            if (pu && !sv) || (pv && !su) {
                relevant.push((round, u, v));
                if pu {
                    newly.push(v);
                }
                if pv {
                    newly.push(u);
                }
            }
        }
        for w in newly {
            possibly[w as usize] = true;
        }
    }

    let c = relevant.len();
    if c as u32 > cap {
        return Err(DiffusionError::TooManyContacts {
            found: c,
            cap,
        });
    }

    let rounds = g.num_snapshots();
    let mut infected = vec![false; g.n()];
    let mut acc = F::zero();
    for mask in 0u64..(1u64 << c) {
        infected.fill(false);
        for &j in s.nodes() {
            infected[j as usize] = true;
        }
        let mut count = s.k() as u32;
        let mut cursor = 0usize;
        for round in 0..rounds {
            let start = cursor;
            while cursor < c && relevant[cursor].0 == round {
                cursor += 1;
            }
            let mut newly: u64 = 0; // bit i set -> relevant[start + i] fired
            for (offset, &(_, u, v)) in relevant[start..cursor].iter().enumerate() {
                let idx = start + offset;
                if mask & (1 << idx) == 0 {
                    continue;
                }
                let iu = infected[u as usize];
                let iv = infected[v as usize];
                if iu != iv {
                    newly |= 1 << offset;
                }
            }
            for (offset, &(_, u, v)) in relevant[start..cursor].iter().enumerate() {
                if newly & (1 << offset) != 0 {
                    let w = if infected[u as usize] { v } else { u };
                    if !infected[w as usize] {
                        infected[w as usize] = true;
                        count += 1;
                    }
                }
            }
        }
        let heads = mask.count_ones() as i32;
        let weight = lambda.powi(heads) * (F::one() - lambda).powi(c as i32 - heads);
        acc += weight * F::from_u32(count).expect("count fits scalar");
    }
    Ok(acc)
}

/// [`exact_spread_capped`] with the default cap.
pub fn exact_spread<F: Scalar>(
    g: &TemporalGraph,
    s: &SeedVector,
    lambda: F,
) -> Result<F, DiffusionError> {
    exact_spread_capped(g, s, lambda, EXACT_SPREAD_CONTACT_CAP)
}
