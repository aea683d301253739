//! Surrogate-validation metrics and posterior uncertainty summaries.
//!
//! Validation follows the out-of-sample recipe: run the optimizer, keep its
//! final posterior, draw fresh test seed sets (uniformly or proportionally
//! to degree), evaluate their true spreads by Monte Carlo, and score the
//! posterior-median predictions by mean absolute error plus 95% posterior
//! predictive interval coverage and width. Intervals include observation
//! noise: they are intervals for a noisy evaluation, not for the latent
//! surrogate value.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffusion::{estimate_spread, DiffusionError, SeedError, SeedVector};
use crate::gibbs::{posterior_medians, predict, GibbsError, PosteriorDraws};
use crate::optimizer::{run_bopim, sample_seed_degree_proportional, BopimConfig, OptimError};
use crate::scalar::Scalar;
use crate::stats::quantile_sorted;
use crate::temporal_graph::{aggregate_degrees, NodeId, TemporalGraph};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("inputs differ in length: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("inputs must be non-empty")]
    Empty,
    #[error(transparent)]
    Gibbs(#[from] GibbsError),
    #[error(transparent)]
    Optim(#[from] OptimError),
    #[error(transparent)]
    Diffusion(#[from] DiffusionError),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

/// Mean absolute prediction error.
pub fn mape<F: Scalar>(y_hat: &[F], y: &[F]) -> Result<F, MetricsError> {
    if y_hat.len() != y.len() {
        return Err(MetricsError::DimensionMismatch {
            left: y_hat.len(),
            right: y.len(),
        });
    }
    if y.is_empty() {
        return Err(MetricsError::Empty);
    }
    let total = y_hat
        .iter()
        .zip(y)
        .map(|(&a, &b)| (a - b).abs())
        .sum::<F>();
    Ok(total / F::cast_usize(y.len()))
}

/// Empirical 95% interval coverage and mean width over a test set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CoverageSummary<F> {
    pub coverage: F,
    pub mean_width: F,
}

/// Posterior-predictive 95% interval coverage of `y_test` and the mean
/// interval width. Intervals are the empirical 2.5% and 97.5% quantiles of
/// noisy per-draw predictions.
pub fn interval_coverage<F: Scalar, R: Rng + ?Sized>(
    draws: &PosteriorDraws<F>,
    x_test: &[SeedVector],
    y_test: &[F],
    rng: &mut R,
) -> Result<CoverageSummary<F>, MetricsError> {
    if x_test.len() != y_test.len() {
        return Err(MetricsError::DimensionMismatch {
            left: x_test.len(),
            right: y_test.len(),
        });
    }
    if x_test.is_empty() {
        return Err(MetricsError::Empty);
    }
    let lo_q = F::cast(0.025);
    let hi_q = F::cast(0.975);
    let mut covered = 0usize;
    let mut width_total = F::zero();
    for (x, &y) in x_test.iter().zip(y_test) {
        let pred = predict(draws, x, true, rng)?;
        let lo = pred.quantile(lo_q);
        let hi = pred.quantile(hi_q);
        if y > lo && y < hi {
            covered += 1;
        }
        width_total += hi - lo;
    }
    let nf = F::cast_usize(x_test.len());
    Ok(CoverageSummary {
        coverage: F::cast_usize(covered) / nf,
        mean_width: width_total / nf,
    })
}

/// How out-of-sample test seed sets are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sampling {
    Random,
    Degree,
}

impl Sampling {
    pub fn as_str(&self) -> &'static str {
        match self {
            Sampling::Random => "random",
            Sampling::Degree => "degree",
        }
    }
}

impl std::str::FromStr for Sampling {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "random" => Ok(Sampling::Random),
            "degree" => Ok(Sampling::Degree),
            other => Err(format!("unknown sampling scheme `{other}`")),
        }
    }
}

/// One row of a validation report.
#[derive(Clone, Copy, Debug)]
pub struct ValidationReport<F> {
    pub mape: F,
    /// Sample standard error of the absolute errors.
    pub mape_se: F,
    pub coverage: F,
    pub mean_width: F,
}

/// Fit the surrogate via a full optimizer run, then score it out of sample
/// on `n_test` fresh seed sets.
///
/// `seed` drives everything: the embedded run (overriding `cfg.seed`), test
/// sampling, the Monte Carlo ground-truth evaluations, and the predictive
/// noise.
pub fn validate_surrogate<F: Scalar>(
    g: &TemporalGraph,
    cfg: &BopimConfig<F>,
    n_test: usize,
    sampling: Sampling,
    seed: u64,
) -> Result<ValidationReport<F>, MetricsError> {
    if n_test == 0 {
        return Err(MetricsError::Empty);
    }
    let mut root = ChaCha8Rng::seed_from_u64(seed);
    let run_seed: u64 = root.random();
    let mut sample_rng = ChaCha8Rng::seed_from_u64(root.random());
    let mut eval_seeds = ChaCha8Rng::seed_from_u64(root.random());
    let mut noise_rng = ChaCha8Rng::seed_from_u64(root.random());

    let mut run_cfg = cfg.clone();
    run_cfg.seed = run_seed;
    let run = run_bopim(g, &run_cfg)?;
    let draws = &run.draws;

    let degrees = aggregate_degrees(g);
    let n = g.n();
    let mut x_test: Vec<SeedVector> = Vec::with_capacity(n_test);
    for _ in 0..n_test {
        let x = match sampling {
            Sampling::Degree => sample_seed_degree_proportional(&degrees, cfg.k, &mut sample_rng)?,
            Sampling::Random => {
                let picks = rand::seq::index::sample(&mut sample_rng, n, cfg.k);
                SeedVector::from_nodes(n, picks.iter().map(|j| j as NodeId))?
            }
        };
        x_test.push(x);
    }

    let mut y_true: Vec<F> = Vec::with_capacity(n_test);
    for x in &x_test {
        let est = estimate_spread(g, x, cfg.lambda, cfg.n_sims, eval_seeds.random())?;
        y_true.push(est.mean);
    }

    // Point predictions come from the posterior-median coefficients.
    let medians = posterior_medians(draws);
    let y_hat: Vec<F> = x_test
        .iter()
        .map(|x| {
            x.nodes()
                .iter()
                .map(|&j| medians[j as usize])
                .sum::<F>()
                + draws.y_mean()
        })
        .collect();

    let abs_errors: Vec<F> = y_hat
        .iter()
        .zip(&y_true)
        .map(|(&a, &b)| (a - b).abs())
        .collect();
    let mape_value = mape(&y_hat, &y_true)?;
    let mape_se = (crate::stats::sample_variance(&abs_errors) / F::cast_usize(n_test)).sqrt();

    let cov = interval_coverage(draws, &x_test, &y_true, &mut noise_rng)?;

    Ok(ValidationReport {
        mape: mape_value,
        mape_se,
        coverage: cov.coverage,
        mean_width: cov.mean_width,
    })
}

/// Per-draw indicator counts: how many retained sweeps put each node among
/// the `k` largest coefficients (ties at the cut resolved by smaller index).
///
/// Counts always sum to `k * n_kept` exactly.
pub fn topk_inclusion_counts<F: Scalar>(
    draws: &PosteriorDraws<F>,
    k: usize,
) -> Result<Vec<u64>, MetricsError> {
    let n = draws.n();
    if k > n {
        return Err(MetricsError::DimensionMismatch { left: k, right: n });
    }
    let mut counts = vec![0u64; n];
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for s in 0..draws.n_kept() {
        let row = draws.beta().row(s);
        order.clear();
        order.extend(0..n);
        order.sort_by(|&a, &b| {
            row[b]
                .partial_cmp(&row[a])
                .expect("draws are finite")
                .then(a.cmp(&b))
        });
        for &j in &order[..k] {
            counts[j] += 1;
        }
    }
    Ok(counts)
}

/// Fraction of retained sweeps in which each node ranks in the top `k`.
/// The underlying counts satisfy `sum = k * n_kept` exactly; the returned
/// fractions sum to `k` up to float rounding.
pub fn topk_inclusion_proportions<F: Scalar>(
    draws: &PosteriorDraws<F>,
    k: usize,
) -> Result<Vec<F>, MetricsError> {
    let counts = topk_inclusion_counts(draws, k)?;
    let total = F::cast_usize(draws.n_kept());
    Ok(counts
        .iter()
        .map(|&c| F::from_u64(c).expect("count fits scalar") / total)
        .collect())
}

/// Five-number summary of one coefficient's posterior draws.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoxStats<F> {
    pub min: F,
    pub q1: F,
    pub median: F,
    pub q3: F,
    pub max: F,
}

/// Per-node five-number summaries (quartiles by linear interpolation).
pub fn posterior_box_stats<F: Scalar>(
    draws: &PosteriorDraws<F>,
) -> Result<Vec<BoxStats<F>>, MetricsError> {
    if draws.n_kept() == 0 {
        return Err(MetricsError::Empty);
    }
    let quarter = F::cast(0.25);
    let half = F::cast(0.5);
    let three_quarters = F::cast(0.75);
    Ok((0..draws.n())
        .map(|j| {
            let mut col = draws.beta().col(j);
            col.sort_by(|a, b| a.partial_cmp(b).expect("draws are finite"));
            BoxStats {
                min: col[0],
                q1: quantile_sorted(&col, quarter),
                median: quantile_sorted(&col, half),
                q3: quantile_sorted(&col, three_quarters),
                max: col[col.len() - 1],
            }
        })
        .collect())
}
