//! Gibbs samplers for the linear spread surrogate under the Horseshoe,
//! Dirichlet-Laplace, and R2D2 shrinkage priors.
//!
//! The surrogate is `f(x) = x . beta` on centered responses. Every prior
//! shares the same first two conditional updates per sweep -- a
//! precision-form normal draw for `beta` and an inverse-gamma draw for the
//! noise variance -- and differs only in how the diagonal prior scale matrix
//! `S` is built and refreshed:
//!
//! * Horseshoe: `S = diag(lambda_j^2 tau^2)` with inverse-gamma auxiliary
//!   updates for the local scales, the global scale, and their mixing
//!   variables.
//! * Dirichlet-Laplace: `S = diag(psi_j phi_j^2 tau^2)` with
//!   inverse-Gaussian local updates, a GIG global update, and a GIG-derived
//!   Dirichlet draw for `phi`.
//! * R2D2: `S = diag(psi_j phi_j omega / 2)` with inverse-Gaussian locals, a
//!   GIG global `omega`, a gamma auxiliary `xi`, and a GIG-derived Dirichlet
//!   draw for `phi`.
//!
//! Update order within a sweep follows the samplers' definitions exactly:
//! `beta`, noise variance, locals, globals, auxiliaries. All scale-type
//! state initializes to one and `beta` to zero.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diffusion::SeedVector;
use crate::linalg::Matrix;
use crate::samplers::{
    sample_gig, sample_inverse_gamma, sample_inverse_gaussian, sample_mvn_precision, GigParams,
    SamplerError,
};
use crate::scalar::Scalar;
use crate::stats::{quantile_sorted, sample_variance};

/// Numerical guards: scale-type chain state is confined to this range and
/// near-zero coefficients are floored before they enter denominators.
const SCALE_FLOOR: f64 = 1e-12;
const SCALE_CEIL: f64 = 1e12;
const BETA_ABS_FLOOR: f64 = 1e-10;

fn clamp_scale<F: Scalar>(x: F) -> F {
    x.max(F::cast(SCALE_FLOOR)).min(F::cast(SCALE_CEIL))
}

fn beta_abs<F: Scalar>(b: F) -> F {
    b.abs().max(F::cast(BETA_ABS_FLOOR))
}

/// Which shrinkage prior drives the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Prior {
    Horseshoe,
    DirichletLaplace,
    R2d2,
}

impl Prior {
    pub const ALL: [Prior; 3] = [Prior::Horseshoe, Prior::DirichletLaplace, Prior::R2d2];

    pub fn as_str(&self) -> &'static str {
        match self {
            Prior::Horseshoe => "hs",
            Prior::DirichletLaplace => "dl",
            Prior::R2d2 => "r2d2",
        }
    }
}

impl std::str::FromStr for Prior {
    type Err = GibbsError;

    fn from_str(s: &str) -> Result<Self, GibbsError> {
        match s.to_ascii_lowercase().as_str() {
            "hs" | "horseshoe" => Ok(Prior::Horseshoe),
            "dl" | "dirichlet-laplace" => Ok(Prior::DirichletLaplace),
            "r2d2" => Ok(Prior::R2d2),
            other => Err(GibbsError::InvalidConfig(format!(
                "unknown prior `{other}` (expected hs, dl, or r2d2)"
            ))),
        }
    }
}

/// Prior hyperparameters. Defaults follow the priors' source conventions:
/// Dirichlet-Laplace concentration `a = 1/2`; R2D2 `b = 1/2` with
/// `a_pi = 1 / (sqrt(n) N^{1/4} ln n)` clamped to `[0.005, 0.5]` and
/// `a = n a_pi`; noise variance prior InverseGamma(1, 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyper<F> {
    /// Dirichlet-Laplace concentration `a`.
    pub dl_a: F,
    /// R2D2 Dirichlet concentration `a_pi`; `None` resolves the default from
    /// the data dimensions at fit time.
    pub r2d2_a_pi: Option<F>,
    /// R2D2 beta-prime second parameter `b`.
    pub r2d2_b: F,
    /// Noise-variance prior shape `a_1`.
    pub noise_a: F,
    /// Noise-variance prior scale `b_1`.
    pub noise_b: F,
}

impl<F: Scalar> Default for Hyper<F> {
    fn default() -> Self {
        Hyper {
            dl_a: F::cast(0.5),
            r2d2_a_pi: None,
            r2d2_b: F::cast(0.5),
            noise_a: F::one(),
            noise_b: F::one(),
        }
    }
}

impl<F: Scalar> Hyper<F> {
    /// The default R2D2 `a_pi` for an `N x n` design.
    pub fn default_r2d2_a_pi(n: usize, n_rows: usize) -> F {
        let n_f = n as f64;
        let raw = 1.0 / (n_f.sqrt() * (n_rows as f64).powf(0.25) * n_f.ln());
        F::cast(raw.clamp(0.005, 0.5))
    }

    fn validate(&self) -> Result<(), GibbsError> {
        let pos = |v: F, what: &str| {
            if v > F::zero() && v.is_finite() {
                Ok(())
            } else {
                Err(GibbsError::InvalidConfig(format!(
                    "hyperparameter {what} must be positive and finite"
                )))
            }
        };
        pos(self.dl_a, "dl_a")?;
        pos(self.r2d2_b, "r2d2_b")?;
        pos(self.noise_a, "noise_a")?;
        pos(self.noise_b, "noise_b")?;
        if let Some(a_pi) = self.r2d2_a_pi {
            pos(a_pi, "r2d2_a_pi")?;
        }
        Ok(())
    }
}

/// MCMC budget, prior choice, and seed for one chain.
#[derive(Clone, Debug, PartialEq)]
pub struct GibbsConfig<F> {
    /// Total sweeps, including burn-in.
    pub n_iter: usize,
    /// Discarded sweeps.
    pub n_burn: usize,
    pub prior: Prior,
    pub hyper: Hyper<F>,
    pub seed: u64,
    /// Diagnostic switch: pin the prior scale matrix at `S = I` and skip all
    /// scale updates, which reduces every prior to the analytic ridge
    /// posterior. Used by the conjugate-reduction oracles.
    pub freeze_scales: bool,
}

impl<F: Scalar> GibbsConfig<F> {
    pub fn new(prior: Prior) -> Self {
        GibbsConfig {
            n_iter: 6000,
            n_burn: 1000,
            prior,
            hyper: Hyper::default(),
            seed: 0,
            freeze_scales: false,
        }
    }

    fn validate(&self) -> Result<(), GibbsError> {
        if self.n_iter == 0 || self.n_burn >= self.n_iter {
            return Err(GibbsError::InvalidConfig(format!(
                "burn-in {} must be smaller than total sweeps {}",
                self.n_burn, self.n_iter
            )));
        }
        self.hyper.validate()
    }
}

impl<F: Scalar> Default for GibbsConfig<F> {
    fn default() -> Self {
        GibbsConfig::new(Prior::Horseshoe)
    }
}

/// Design matrix of evaluated seed vectors plus centered responses.
#[derive(Clone, Debug)]
pub struct Dataset<F> {
    rows: Vec<SeedVector>,
    y: Vec<F>,
    y_mean: F,
}

impl<F: Scalar> Dataset<F> {
    /// Center `y_raw` and pair it with the design rows. All rows must share
    /// the same node count and seed-set size.
    pub fn from_observations(rows: Vec<SeedVector>, y_raw: &[F]) -> Result<Self, GibbsError> {
        if rows.is_empty() {
            return Err(GibbsError::InvalidData("dataset needs at least one row"));
        }
        if rows.len() != y_raw.len() {
            return Err(GibbsError::InvalidData(
                "design rows and responses differ in length",
            ));
        }
        let n = rows[0].n();
        let k = rows[0].k();
        if rows.iter().any(|r| r.n() != n) {
            return Err(GibbsError::InvalidData("rows disagree on node count"));
        }
        if rows.iter().any(|r| r.k() != k) {
            return Err(GibbsError::InvalidData("rows disagree on seed-set size"));
        }
        let y_mean = y_raw.iter().copied().sum::<F>() / F::cast_usize(y_raw.len());
        let y = y_raw.iter().map(|&v| v - y_mean).collect();
        Ok(Dataset { rows, y, y_mean })
    }

    pub fn rows(&self) -> &[SeedVector] {
        &self.rows
    }

    /// Centered responses.
    pub fn y(&self) -> &[F] {
        &self.y
    }

    pub fn y_mean(&self) -> F {
        self.y_mean
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn n(&self) -> usize {
        self.rows[0].n()
    }

    pub fn k(&self) -> usize {
        self.rows[0].k()
    }
}

/// Post-burn-in draws of the surrogate coefficients and noise variance.
#[derive(Clone, Debug)]
pub struct PosteriorDraws<F> {
    /// One row per retained sweep, one column per node.
    beta: Matrix<F>,
    sigma2: Vec<F>,
    prior: Prior,
    y_mean: F,
}

impl<F: Scalar> PosteriorDraws<F> {
    /// Assemble draws directly (fixture construction in tests and tools).
    pub fn from_parts(beta: Matrix<F>, sigma2: Vec<F>, prior: Prior, y_mean: F) -> Self {
        assert_eq!(beta.rows(), sigma2.len(), "one sigma2 draw per beta row");
        assert!(beta.rows() > 0, "draws must be non-empty");
        PosteriorDraws {
            beta,
            sigma2,
            prior,
            y_mean,
        }
    }

    /// Number of coefficients (nodes).
    pub fn n(&self) -> usize {
        self.beta.cols()
    }

    /// Number of retained sweeps.
    pub fn n_kept(&self) -> usize {
        self.beta.rows()
    }

    pub fn beta(&self) -> &Matrix<F> {
        &self.beta
    }

    pub fn sigma2(&self) -> &[F] {
        &self.sigma2
    }

    pub fn prior(&self) -> Prior {
        self.prior
    }

    pub fn y_mean(&self) -> F {
        self.y_mean
    }

    /// Dump retained sweeps as CSV: header `sigma2,beta_0,..,beta_{n-1}`,
    /// one row per sweep.
    pub fn write_draws_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        write!(w, "sigma2")?;
        for j in 0..self.n() {
            write!(w, ",beta_{j}")?;
        }
        writeln!(w)?;
        for s in 0..self.n_kept() {
            write!(w, "{}", self.sigma2[s])?;
            for &b in self.beta.row(s) {
                write!(w, ",{b}")?;
            }
            writeln!(w)?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum GibbsError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("invalid dataset: {0}")]
    InvalidData(&'static str),
    #[error("seed vector covers {x_n} nodes but the surrogate has {n} coefficients")]
    DimensionMismatch { x_n: usize, n: usize },
    #[error(transparent)]
    Sampler(#[from] SamplerError),
}

/// Per-prior scale state. `s_diag` returns the diagonal of `S`.
enum ScaleState<F> {
    Horseshoe {
        lambda2: Vec<F>,
        tau2: F,
        nu: Vec<F>,
        xi: F,
    },
    DirichletLaplace {
        psi: Vec<F>,
        phi: Vec<F>,
        tau: F,
    },
    R2d2 {
        psi: Vec<F>,
        phi: Vec<F>,
        omega: F,
        xi: F,
    },
}

impl<F: Scalar> ScaleState<F> {
    fn init(prior: Prior, n: usize, frozen: bool) -> Self {
        let one = vec![F::one(); n];
        match prior {
            Prior::Horseshoe => ScaleState::Horseshoe {
                lambda2: one.clone(),
                tau2: F::one(),
                nu: one,
                xi: F::one(),
            },
            Prior::DirichletLaplace => ScaleState::DirichletLaplace {
                psi: one.clone(),
                phi: one,
                tau: F::one(),
            },
            Prior::R2d2 => ScaleState::R2d2 {
                psi: one.clone(),
                phi: one,
                // omega = 2 makes S = diag(psi phi omega / 2) the identity
                // in the frozen diagnostic mode.
                omega: if frozen { F::cast(2.0) } else { F::one() },
                xi: F::one(),
            },
        }
    }

    fn s_diag(&self, j: usize) -> F {
        match self {
            ScaleState::Horseshoe { lambda2, tau2, .. } => lambda2[j] * *tau2,
            ScaleState::DirichletLaplace { psi, phi, tau } => {
                psi[j] * phi[j] * phi[j] * *tau * *tau
            }
            ScaleState::R2d2 { psi, phi, omega, .. } => {
                psi[j] * phi[j] * *omega / F::cast(2.0)
            }
        }
    }

    /// One round of scale updates given fresh `beta` and `sigma2`, in the
    /// listed order for each prior.
    fn update(
        &mut self,
        beta: &[F],
        sigma2: F,
        hyper: &ResolvedHyper<F>,
        rng: &mut ChaCha8Rng,
    ) -> Result<(), SamplerError> {
        let one = F::one();
        let two = F::cast(2.0);
        let n = beta.len();
        let nf = F::cast_usize(n);
        match self {
            ScaleState::Horseshoe {
                lambda2,
                tau2,
                nu,
                xi,
            } => {
                let sigma2_tau2 = sigma2 * *tau2;
                for j in 0..n {
                    let scale = nu[j].recip() + beta[j] * beta[j] / (two * sigma2_tau2);
                    lambda2[j] = clamp_scale(sample_inverse_gamma(one, scale, rng)?);
                }
                let mut acc = F::zero();
                for j in 0..n {
                    acc += beta[j] * beta[j] / lambda2[j];
                }
                let scale = xi.recip() + acc / (two * sigma2);
                *tau2 = clamp_scale(sample_inverse_gamma((nf + one) / two, scale, rng)?);
                for j in 0..n {
                    nu[j] = clamp_scale(sample_inverse_gamma(
                        one,
                        one + lambda2[j].recip(),
                        rng,
                    )?);
                }
                *xi = clamp_scale(sample_inverse_gamma(one, one + tau2.recip(), rng)?);
            }
            ScaleState::DirichletLaplace { psi, phi, tau } => {
                let sigma = sigma2.sqrt();
                let a = hyper.dl_a;
                for j in 0..n {
                    let mu = clamp_scale(sigma * phi[j] * *tau / beta_abs(beta[j]));
                    let inv = sample_inverse_gaussian(mu, one, rng)?;
                    psi[j] = clamp_scale(inv.recip());
                }
                let mut chi = F::zero();
                for j in 0..n {
                    chi += two * beta_abs(beta[j]) / (sigma * phi[j]);
                }
                let params = GigParams::new(nf * a - nf, one, clamp_scale(chi))?;
                *tau = clamp_scale(sample_gig(&params, rng)?);
                let mut total = F::zero();
                let mut draws = vec![F::zero(); n];
                for j in 0..n {
                    let chi = clamp_scale(two * beta_abs(beta[j]) / sigma);
                    let params = GigParams::new(a - one, one, chi)?;
                    draws[j] = sample_gig(&params, rng)?.max(F::cast(SCALE_FLOOR));
                    total += draws[j];
                }
                for j in 0..n {
                    phi[j] = draws[j] / total;
                }
            }
            ScaleState::R2d2 {
                psi,
                phi,
                omega,
                xi,
            } => {
                let a = hyper.r2d2_a;
                let a_pi = hyper.r2d2_a_pi;
                let b = hyper.r2d2_b;
                for j in 0..n {
                    let mu = clamp_scale(
                        (sigma2 * phi[j] * *omega / two).sqrt() / beta_abs(beta[j]),
                    );
                    let inv = sample_inverse_gaussian(mu, one, rng)?;
                    psi[j] = clamp_scale(inv.recip());
                }
                let mut chi = F::zero();
                for j in 0..n {
                    chi += two * beta[j] * beta[j] / (sigma2 * psi[j] * phi[j]);
                }
                let params =
                    GigParams::new(a - nf / two, two * *xi, clamp_scale(chi))?;
                *omega = clamp_scale(sample_gig(&params, rng)?);
                *xi = clamp_scale(F::gamma_draw(a + b, (one + *omega).recip(), rng));
                let mut total = F::zero();
                let mut draws = vec![F::zero(); n];
                for j in 0..n {
                    let chi = clamp_scale(two * beta[j] * beta[j] / (sigma2 * psi[j]));
                    let params = GigParams::new(a_pi - one / two, two * *xi, chi)?;
                    draws[j] = sample_gig(&params, rng)?.max(F::cast(SCALE_FLOOR));
                    total += draws[j];
                }
                for j in 0..n {
                    phi[j] = draws[j] / total;
                }
            }
        }
        Ok(())
    }
}

struct ResolvedHyper<F> {
    dl_a: F,
    r2d2_a_pi: F,
    r2d2_a: F,
    r2d2_b: F,
    noise_a: F,
    noise_b: F,
}

/// Run one Gibbs chain and return the post-burn-in draws.
pub fn fit<F: Scalar>(data: &Dataset<F>, cfg: &GibbsConfig<F>) -> Result<PosteriorDraws<F>, GibbsError> {
    cfg.validate()?;
    if data.len() < 2 {
        return Err(GibbsError::InvalidData("fit needs at least two rows"));
    }
    let n = data.n();
    let n_rows = data.len();

    let a_pi = cfg
        .hyper
        .r2d2_a_pi
        .unwrap_or_else(|| Hyper::<F>::default_r2d2_a_pi(n, n_rows));
    let hyper = ResolvedHyper {
        dl_a: cfg.hyper.dl_a,
        r2d2_a_pi: a_pi,
        r2d2_a: F::cast_usize(n) * a_pi,
        r2d2_b: cfg.hyper.r2d2_b,
        noise_a: cfg.hyper.noise_a,
        noise_b: cfg.hyper.noise_b,
    };

    // Sufficient statistics of the binary design.
    let mut xtx = Matrix::<F>::zeros(n, n);
    let mut xt_y = vec![F::zero(); n];
    for (row, &yi) in data.rows().iter().zip(data.y()) {
        for &a in row.nodes() {
            xt_y[a as usize] += yi;
            for &b in row.nodes() {
                xtx[(a as usize, b as usize)] += F::one();
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut state: ScaleState<F> = ScaleState::init(cfg.prior, n, cfg.freeze_scales);
    let mut sigma2 = sample_variance(data.y()).max(F::cast(1e-8));
    let mut s_inv = vec![F::zero(); n];

    let kept = cfg.n_iter - cfg.n_burn;
    let mut beta_draws = Matrix::<F>::zeros(kept, n);
    let mut sigma2_draws = Vec::with_capacity(kept);

    let two = F::cast(2.0);
    let half_dims = (F::cast_usize(n_rows) + F::cast_usize(n)) / two;

    for sweep in 0..cfg.n_iter {
        for (j, si) in s_inv.iter_mut().enumerate() {
            *si = clamp_scale(state.s_diag(j).recip());
        }
        let beta = sample_mvn_precision(&xt_y, &xtx, &s_inv, sigma2, &mut rng)?;

        let mut quad = F::zero();
        for j in 0..n {
            quad += beta[j] * beta[j] * s_inv[j];
        }
        let mut rss = F::zero();
        for (row, &yi) in data.rows().iter().zip(data.y()) {
            let fitted = row.nodes().iter().map(|&j| beta[j as usize]).sum::<F>();
            let r = yi - fitted;
            rss += r * r;
        }
        sigma2 = sample_inverse_gamma(
            hyper.noise_a + half_dims,
            hyper.noise_b + (quad + rss) / two,
            &mut rng,
        )?;

        if !cfg.freeze_scales {
            state.update(&beta, sigma2, &hyper, &mut rng)?;
        }

        if sweep >= cfg.n_burn {
            let row = sweep - cfg.n_burn;
            beta_draws.row_mut(row).copy_from_slice(&beta);
            sigma2_draws.push(sigma2);
        }
    }

    Ok(PosteriorDraws {
        beta: beta_draws,
        sigma2: sigma2_draws,
        prior: cfg.prior,
        y_mean: data.y_mean(),
    })
}

/// Coordinatewise posterior medians of the coefficient draws.
pub fn posterior_medians<F: Scalar>(draws: &PosteriorDraws<F>) -> Vec<F> {
    (0..draws.n())
        .map(|j| {
            let mut col = draws.beta.col(j);
            col.sort_by(|a, b| a.partial_cmp(b).expect("draws are finite"));
            quantile_sorted(&col, F::cast(0.5))
        })
        .collect()
}

/// Empirical distribution of the surrogate prediction for one seed vector.
///
/// Values are stored ascending; quantiles use the crate-wide linear
/// interpolation rule.
#[derive(Clone, Debug)]
pub struct Predictive<F> {
    sorted: Vec<F>,
}

impl<F: Scalar> Predictive<F> {
    pub fn values(&self) -> &[F] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn median(&self) -> F {
        self.quantile(F::cast(0.5))
    }

    pub fn quantile(&self, alpha: F) -> F {
        quantile_sorted(&self.sorted, alpha)
    }
}

/// Per-draw prediction `x . beta + y_mean`, optionally perturbed by one
/// draw of observation noise per sweep.
pub fn predict<F: Scalar, R: rand::Rng + ?Sized>(
    draws: &PosteriorDraws<F>,
    x: &SeedVector,
    include_noise: bool,
    rng: &mut R,
) -> Result<Predictive<F>, GibbsError> {
    if x.n() != draws.n() {
        return Err(GibbsError::DimensionMismatch {
            x_n: x.n(),
            n: draws.n(),
        });
    }
    let mut values: Vec<F> = (0..draws.n_kept())
        .map(|s| {
            let row = draws.beta.row(s);
            let mut v = x.nodes().iter().map(|&j| row[j as usize]).sum::<F>() + draws.y_mean;
            if include_noise {
                v += draws.sigma2[s].sqrt() * F::standard_normal(rng);
            }
            v
        })
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("predictions are finite"));
    Ok(Predictive { sorted: values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn tiny_dataset() -> Dataset<f64> {
        let rows = vec![
            SeedVector::from_nodes(3, [0]).unwrap(),
            SeedVector::from_nodes(3, [1]).unwrap(),
            SeedVector::from_nodes(3, [2]).unwrap(),
            SeedVector::from_nodes(3, [0]).unwrap(),
        ];
        Dataset::from_observations(rows, &[3.0, 1.0, 1.0, 3.2]).unwrap()
    }

    #[test]
    fn dataset_centers_responses() {
        let d = tiny_dataset();
        assert!((d.y_mean() - 2.05).abs() < 1e-12);
        let total: f64 = d.y().iter().sum();
        assert!(total.abs() < 1e-12);
    }

    #[test]
    fn dataset_rejects_mixed_k() {
        let rows = vec![
            SeedVector::from_nodes(3, [0]).unwrap(),
            SeedVector::from_nodes(3, [0, 1]).unwrap(),
        ];
        assert!(Dataset::from_observations(rows, &[1.0, 2.0]).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = GibbsConfig::<f64>::new(Prior::Horseshoe);
        cfg.n_burn = cfg.n_iter;
        assert!(matches!(
            fit(&tiny_dataset(), &cfg),
            Err(GibbsError::InvalidConfig(_))
        ));
        let mut cfg = GibbsConfig::<f64>::new(Prior::R2d2);
        cfg.hyper.r2d2_b = -1.0;
        assert!(matches!(
            fit(&tiny_dataset(), &cfg),
            Err(GibbsError::InvalidConfig(_))
        ));
    }

    #[test]
    fn chains_are_deterministic() {
        let data = tiny_dataset();
        for prior in Prior::ALL {
            let mut cfg = GibbsConfig::<f64>::new(prior);
            cfg.n_iter = 200;
            cfg.n_burn = 50;
            cfg.seed = 11;
            let a = fit(&data, &cfg).unwrap();
            let b = fit(&data, &cfg).unwrap();
            assert_eq!(a.beta().data(), b.beta().data());
            assert_eq!(a.sigma2(), b.sigma2());
        }
    }

    #[test]
    fn chain_state_stays_positive() {
        let data = tiny_dataset();
        for prior in Prior::ALL {
            let mut cfg = GibbsConfig::<f64>::new(prior);
            cfg.n_iter = 300;
            cfg.n_burn = 0;
            cfg.seed = 5;
            let draws = fit(&data, &cfg).unwrap();
            assert_eq!(draws.n_kept(), 300);
            assert!(draws.sigma2().iter().all(|&s| s > 0.0 && s.is_finite()));
            assert!(draws.beta().data().iter().all(|b| b.is_finite()));
        }
    }

    #[test]
    fn posterior_median_trivia() {
        let mut beta = Matrix::<f64>::zeros(3, 1);
        beta[(0, 0)] = 0.0;
        beta[(1, 0)] = 1.0;
        beta[(2, 0)] = 2.0;
        let draws = PosteriorDraws::from_parts(beta, vec![1.0; 3], Prior::Horseshoe, 0.0);
        assert_eq!(posterior_medians(&draws), vec![1.0]);

        let mut single = Matrix::<f64>::zeros(1, 2);
        single[(0, 0)] = -3.5;
        single[(0, 1)] = 4.0;
        let draws = PosteriorDraws::from_parts(single, vec![1.0], Prior::R2d2, 0.0);
        assert_eq!(posterior_medians(&draws), vec![-3.5, 4.0]);
    }

    #[test]
    fn degenerate_posterior_predicts_point_mass() {
        // All draws identical with beta = e_1 and no noise.
        let mut beta = Matrix::<f64>::zeros(4, 3);
        for s in 0..4 {
            beta[(s, 1)] = 1.0;
        }
        let draws = PosteriorDraws::from_parts(beta, vec![0.5; 4], Prior::Horseshoe, 0.0);
        let x = SeedVector::from_nodes(3, [1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pred = predict(&draws, &x, false, &mut rng).unwrap();
        assert_eq!(pred.median(), 1.0);
        assert_eq!(pred.quantile(0.975) - pred.quantile(0.025), 0.0);
    }

    #[test]
    fn predict_checks_dimensions() {
        let beta = Matrix::<f64>::zeros(2, 3);
        let draws = PosteriorDraws::from_parts(beta, vec![1.0; 2], Prior::Horseshoe, 0.0);
        let x = SeedVector::from_nodes(5, [1]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            predict(&draws, &x, false, &mut rng),
            Err(GibbsError::DimensionMismatch { x_n: 5, n: 3 })
        ));
    }

    #[test]
    fn quantiles_are_monotone() {
        let data = tiny_dataset();
        let mut cfg = GibbsConfig::<f64>::new(Prior::DirichletLaplace);
        cfg.n_iter = 400;
        cfg.n_burn = 100;
        let draws = fit(&data, &cfg).unwrap();
        let x = SeedVector::from_nodes(3, [0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pred = predict(&draws, &x, true, &mut rng).unwrap();
        let lo = pred.quantile(0.025);
        let med = pred.median();
        let hi = pred.quantile(0.975);
        assert!(lo <= med && med <= hi);
    }

    #[test]
    fn draws_csv_has_one_row_per_sweep() {
        let data = tiny_dataset();
        let mut cfg = GibbsConfig::<f64>::new(Prior::Horseshoe);
        cfg.n_iter = 120;
        cfg.n_burn = 20;
        let draws = fit(&data, &cfg).unwrap();
        let mut buf = Vec::new();
        draws.write_draws_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "sigma2,beta_0,beta_1,beta_2");
        assert_eq!(lines.len(), 1 + 100);
    }

    #[test]
    fn prior_parsing() {
        assert_eq!("hs".parse::<Prior>().unwrap(), Prior::Horseshoe);
        assert_eq!("DL".parse::<Prior>().unwrap(), Prior::DirichletLaplace);
        assert_eq!("r2d2".parse::<Prior>().unwrap(), Prior::R2d2);
        assert!("laplace".parse::<Prior>().is_err());
    }
}
