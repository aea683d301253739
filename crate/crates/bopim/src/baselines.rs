//! Gold-standard greedy seed selection with CELF lazy evaluation, plus the
//! random-seed baseline.
//!
//! The lazy loop keeps a max-priority structure of stale marginal-gain upper
//! bounds and re-evaluates a node only when its stale bound reaches the top,
//! which is sound because the spread function is monotone and submodular.
//! Ties are deterministic: equal gains resolve to the smaller node index.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffusion::{estimate_spread, DiffusionError, SeedError, SeedVector, SpreadEstimate};
use crate::scalar::Scalar;
use crate::temporal_graph::{NodeId, TemporalGraph};

#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("seed-set size {k} exceeds node count {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("seed-set size must be at least 1")]
    KZero,
    #[error(transparent)]
    Diffusion(#[from] DiffusionError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// Heap entry: a (possibly stale) marginal-gain bound for `node`, valid
/// against the seed set of size `round`.
struct Bound<F> {
    gain: F,
    /// Objective value of (current set + node) measured when the bound was
    /// computed; exact, so the accepted set's value needs no re-derivation.
    value: F,
    node: NodeId,
    round: usize,
}

impl<F: Scalar> PartialEq for Bound<F> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<F: Scalar> Eq for Bound<F> {}

impl<F: Scalar> PartialOrd for Bound<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<F: Scalar> Ord for Bound<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gain
            .partial_cmp(&other.gain)
            .expect("gains are finite")
            // Smaller node index wins ties at the top of the heap.
            .then_with(|| other.node.cmp(&self.node))
    }
}

/// CELF with an injected evaluator, so tests can drive it with the exact
/// spread oracle instead of Monte Carlo.
///
/// Returns the selected set, the evaluator's value for it, and the number of
/// objective evaluations performed.
pub fn greedy_celf_with<F, E>(
    n: usize,
    k: usize,
    mut evaluate: E,
) -> Result<(SeedVector, F, usize), BaselineError>
where
    F: Scalar,
    E: FnMut(&SeedVector) -> Result<F, BaselineError>,
{
    if k == 0 {
        return Err(BaselineError::KZero);
    }
    if k > n {
        return Err(BaselineError::KTooLarge { k, n });
    }

    let mut evals = 0usize;
    let mut heap: BinaryHeap<Bound<F>> = BinaryHeap::with_capacity(n);
    for node in 0..n as NodeId {
        let x = SeedVector::from_nodes(n, [node])?;
        let value = evaluate(&x)?;
        evals += 1;
        heap.push(Bound {
            gain: value,
            value,
            node,
            round: 0,
        });
    }

    let mut chosen: Vec<NodeId> = Vec::with_capacity(k);
    let mut current_value = F::zero();
    while chosen.len() < k {
        let top = heap.pop().expect("heap holds every unchosen node");
        if top.round == chosen.len() {
            chosen.push(top.node);
            current_value = top.value;
        } else {
            let mut with_node = chosen.clone();
            with_node.push(top.node);
            let x = SeedVector::from_nodes(n, with_node)?;
            let value = evaluate(&x)?;
            evals += 1;
            heap.push(Bound {
                gain: value - current_value,
                value,
                node: top.node,
                round: chosen.len(),
            });
        }
    }

    Ok((SeedVector::from_nodes(n, chosen)?, current_value, evals))
}

/// CELF driven by Monte Carlo spread estimation. Every objective evaluation
/// draws a fresh master seed from a stream seeded by `seed`, so runs are
/// reproducible end to end.
pub fn greedy_celf<F: Scalar>(
    g: &TemporalGraph,
    k: usize,
    lambda: F,
    n_sims: u32,
    seed: u64,
) -> Result<(SeedVector, SpreadEstimate<F>, usize), BaselineError> {
    let mut seed_stream = ChaCha8Rng::seed_from_u64(seed);
    let mut estimates: HashMap<Vec<NodeId>, SpreadEstimate<F>> = HashMap::new();
    let (x, _, evals) = greedy_celf_with(g.n(), k, |s: &SeedVector| {
        let est = estimate_spread(g, s, lambda, n_sims, seed_stream.random())?;
        estimates.insert(s.nodes().to_vec(), est);
        Ok(est.mean)
    })?;
    let est = estimates[x.nodes()];
    Ok((x, est, evals))
}

/// Uniform random k-subset, evaluated once.
pub fn random_baseline<F: Scalar>(
    g: &TemporalGraph,
    k: usize,
    lambda: F,
    n_sims: u32,
    seed: u64,
) -> Result<(SeedVector, SpreadEstimate<F>), BaselineError> {
    let n = g.n();
    if k == 0 {
        return Err(BaselineError::KZero);
    }
    if k > n {
        return Err(BaselineError::KTooLarge { k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picks = rand::seq::index::sample(&mut rng, n, k);
    let x = SeedVector::from_nodes(n, picks.iter().map(|j| j as NodeId))?;
    let est = estimate_spread(g, &x, lambda, n_sims, rng.random())?;
    Ok((x, est))
}
