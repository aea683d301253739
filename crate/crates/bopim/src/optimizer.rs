//! The Bayesian-optimization loop for seed selection.
//!
//! One run spends exactly `N0 + B` objective evaluations: `N0` seed vectors
//! sampled proportionally to aggregate degree, then `B` rounds of
//! fit-surrogate / take-top-k-medians / evaluate / append. The best
//! evaluated vector by Monte Carlo mean is returned together with the final
//! posterior, so callers can run prediction and uncertainty summaries
//! without re-fitting.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffusion::{estimate_spread, DiffusionError, SeedError, SeedVector, SpreadEstimate};
use crate::gibbs::{fit, posterior_medians, Dataset, GibbsConfig, GibbsError, PosteriorDraws};
use crate::scalar::Scalar;
use crate::temporal_graph::{aggregate_degrees, DegreeVector, NodeId, TemporalGraph};

#[derive(Debug, Error)]
pub enum OptimError {
    #[error("seed-set size {k} exceeds node count {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Gibbs(#[from] GibbsError),
    #[error(transparent)]
    Diffusion(#[from] DiffusionError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// Budget and model settings for one optimization run.
#[derive(Clone, Debug)]
pub struct BopimConfig<F> {
    /// Seed-set size.
    pub k: usize,
    /// Infection probability per contact.
    pub lambda: F,
    /// Initial design size.
    pub n0: usize,
    /// Acquisition rounds.
    pub b: usize,
    /// Monte Carlo replicates per objective evaluation.
    pub n_sims: u32,
    pub gibbs: GibbsConfig<F>,
    pub seed: u64,
}

impl<F: Scalar> BopimConfig<F> {
    pub fn new(k: usize, lambda: F) -> Self {
        BopimConfig {
            k,
            lambda,
            n0: 20,
            b: 5,
            n_sims: 1000,
            gibbs: GibbsConfig::default(),
            seed: 0,
        }
    }
}

/// Which phase of the run produced an evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Init,
    Acquisition,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Init => "init",
            Phase::Acquisition => "acquisition",
        }
    }
}

/// One objective evaluation in the run history.
#[derive(Clone, Debug)]
pub struct EvalRecord<F> {
    pub x: SeedVector,
    pub y: SpreadEstimate<F>,
    pub phase: Phase,
}

/// Everything a run produced: the winner, the full history, and the final
/// posterior draws.
#[derive(Clone, Debug)]
pub struct RunResult<F> {
    pub best_x: SeedVector,
    pub best_spread: SpreadEstimate<F>,
    pub history: Vec<EvalRecord<F>>,
    pub draws: PosteriorDraws<F>,
    pub objective_eval_count: usize,
}

/// Sequential weighted sampling without replacement: each of the `k` picks
/// selects an unpicked node with probability proportional to its aggregate
/// degree. Once every remaining node has zero degree the picks fall back to
/// uniform.
pub fn sample_seed_degree_proportional<R: Rng + ?Sized>(
    degrees: &DegreeVector,
    k: usize,
    rng: &mut R,
) -> Result<SeedVector, OptimError> {
    let n = degrees.len();
    if k > n {
        return Err(OptimError::KTooLarge { k, n });
    }
    if k == 0 {
        return Err(OptimError::InvalidConfig("k must be at least 1".into()));
    }
    let weights = degrees.as_slice();
    let mut picked = vec![false; n];
    let mut picks: Vec<NodeId> = Vec::with_capacity(k);
    let mut total: u64 = degrees.total();

    for _ in 0..k {
        let choice = if total > 0 {
            let mut r = rng.random_range(0..total);
            let mut chosen = None;
            for (j, &w) in weights.iter().enumerate() {
                if picked[j] || w == 0 {
                    continue;
                }
                let w = w as u64;
                if r < w {
                    chosen = Some(j);
                    break;
                }
                r -= w;
            }
            chosen.expect("positive total weight always yields a pick")
        } else {
            // Uniform over whatever is left.
            let remaining: Vec<usize> = (0..n).filter(|&j| !picked[j]).collect();
            remaining[rng.random_range(0..remaining.len())]
        };
        picked[choice] = true;
        total -= weights[choice] as u64;
        picks.push(choice as NodeId);
    }
    Ok(SeedVector::from_nodes(n, picks)?)
}

/// The seed vector maximizing `x . median(beta)` subject to `k` ones: take
/// the `k` largest posterior medians, breaking ties at the threshold by
/// smaller node index.
pub fn acquire<F: Scalar>(draws: &PosteriorDraws<F>, k: usize) -> Result<SeedVector, OptimError> {
    let n = draws.n();
    if k > n {
        return Err(OptimError::KTooLarge { k, n });
    }
    let medians = posterior_medians(draws);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        medians[b]
            .partial_cmp(&medians[a])
            .expect("medians are finite")
            .then(a.cmp(&b))
    });
    let nodes = order[..k].iter().map(|&j| j as NodeId);
    Ok(SeedVector::from_nodes(n, nodes)?)
}

/// Run the full optimization loop on a temporal graph.
///
/// Deterministic given `cfg.seed` at any thread count: evaluation master
/// seeds, the design-sampling stream, and per-refit chain seeds are all
/// derived from it in a fixed order.
pub fn run_bopim<F: Scalar>(
    g: &TemporalGraph,
    cfg: &BopimConfig<F>,
) -> Result<RunResult<F>, OptimError> {
    let n = g.n();
    if cfg.k > n {
        return Err(OptimError::KTooLarge { k: cfg.k, n });
    }
    if cfg.k == 0 {
        return Err(OptimError::InvalidConfig("k must be at least 1".into()));
    }
    if cfg.n0 < 1 {
        return Err(OptimError::InvalidConfig("n0 must be at least 1".into()));
    }
    if cfg.n0 + cfg.b < 2 {
        return Err(OptimError::InvalidConfig(
            "n0 + b must be at least 2 to fit the surrogate".into(),
        ));
    }

    let mut design_rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut seed_stream = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(1));
    let degrees = aggregate_degrees(g);

    let mut history: Vec<EvalRecord<F>> = Vec::with_capacity(cfg.n0 + cfg.b);
    for _ in 0..cfg.n0 {
        let x = sample_seed_degree_proportional(&degrees, cfg.k, &mut design_rng)?;
        let y = estimate_spread(g, &x, cfg.lambda, cfg.n_sims, seed_stream.random())?;
        history.push(EvalRecord {
            x,
            y,
            phase: Phase::Init,
        });
    }

    let refit = |history: &[EvalRecord<F>], round: usize| -> Result<PosteriorDraws<F>, OptimError> {
        // Centering is recomputed over the whole history at every refit.
        let rows: Vec<SeedVector> = history.iter().map(|r| r.x.clone()).collect();
        let ys: Vec<F> = history.iter().map(|r| r.y.mean).collect();
        let data = Dataset::from_observations(rows, &ys)?;
        let mut gibbs_cfg = cfg.gibbs.clone();
        gibbs_cfg.seed = cfg.seed.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(round as u64);
        Ok(fit(&data, &gibbs_cfg)?)
    };

    let mut draws = refit(&history, 0)?;
    for round in 0..cfg.b {
        let x = acquire(&draws, cfg.k)?;
        // A re-acquired duplicate is evaluated again with fresh MC noise and
        // appended as a new row; the budget stays N0 + B.
        let y = estimate_spread(g, &x, cfg.lambda, cfg.n_sims, seed_stream.random())?;
        history.push(EvalRecord {
            x,
            y,
            phase: Phase::Acquisition,
        });
        draws = refit(&history, round + 1)?;
    }

    let best = history
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| {
            a.y.mean
                .partial_cmp(&b.y.mean)
                .expect("spread means are finite")
                .then(ib.cmp(ia)) // earliest evaluation wins ties
        })
        .expect("history is non-empty")
        .1;

    Ok(RunResult {
        best_x: best.x.clone(),
        best_spread: best.y,
        objective_eval_count: history.len(),
        draws,
        history,
    })
}
