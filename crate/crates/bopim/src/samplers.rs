//! Random-variate generators needed by the shrinkage-prior Gibbs chains:
//! inverse-gamma, inverse-Gaussian, generalized inverse Gaussian (GIG), and
//! a multivariate normal parameterized by its precision matrix.
//!
//! All samplers are pure functions of `(parameters, rng)`: fixed seeds give
//! bit-identical draw sequences, and independent rng streams make them safe
//! to call from multiple workers.

use rand::Rng;
use thiserror::Error;

use crate::linalg::{cholesky_lower, solve_lower, solve_lower_transpose, Matrix};
use crate::scalar::Scalar;

#[derive(Debug, Error, PartialEq)]
pub enum SamplerError {
    #[error("invalid parameter: {0}")]
    InvalidParam(&'static str),
    #[error("precision matrix could not be factorized, even with {0} jitter levels")]
    FactorizationFailure(usize),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(&'static str),
}

/// Draw from the inverse-gamma law with density proportional to
/// `z^{-shape-1} exp(-scale / z)`.
pub fn sample_inverse_gamma<F: Scalar, R: Rng + ?Sized>(
    shape: F,
    scale: F,
    rng: &mut R,
) -> Result<F, SamplerError> {
    if !(shape > F::zero()) || !shape.is_finite() {
        return Err(SamplerError::InvalidParam("inverse-gamma shape must be > 0"));
    }
    if !(scale > F::zero()) || !scale.is_finite() {
        return Err(SamplerError::InvalidParam("inverse-gamma scale must be > 0"));
    }
    // 1 / Gamma(shape, rate = scale).
    let g = F::gamma_draw(shape, scale.recip(), rng);
    Ok(g.recip().max(F::min_positive_value()))
}

/// Draw from InvGaussian(mu, lam) via the Michael-Schucany-Haas transform.
pub fn sample_inverse_gaussian<F: Scalar, R: Rng + ?Sized>(
    mu: F,
    lam: F,
    rng: &mut R,
) -> Result<F, SamplerError> {
    if !(mu > F::zero()) || !mu.is_finite() {
        return Err(SamplerError::InvalidParam("inverse-Gaussian mean must be > 0"));
    }
    if !(lam > F::zero()) || !lam.is_finite() {
        return Err(SamplerError::InvalidParam("inverse-Gaussian shape must be > 0"));
    }
    let two = F::cast(2.0);
    let four = F::cast(4.0);
    let v = F::standard_normal(rng);
    let y = v * v;
    let mu_2l = mu / (two * lam);
    let x = mu + mu_2l * (mu * y - (four * mu * lam * y + mu * mu * y * y).sqrt());
    let u = F::unit_uniform(rng);
    let out = if u <= mu / (mu + x) { x } else { mu * mu / x };
    // Cancellation in x can underflow to zero; the law is supported on (0, inf).
    Ok(out.max(F::min_positive_value()))
}

/// Parameters of the generalized inverse Gaussian law with density
/// proportional to `z^{order-1} exp(-(rho z + chi / z) / 2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GigParams<F> {
    pub order: F,
    pub rho: F,
    pub chi: F,
}

impl<F: Scalar> GigParams<F> {
    pub fn new(order: F, rho: F, chi: F) -> Result<Self, SamplerError> {
        if !order.is_finite() || !rho.is_finite() || !chi.is_finite() {
            return Err(SamplerError::InvalidParam("GIG parameters must be finite"));
        }
        if rho < F::zero() {
            return Err(SamplerError::InvalidParam("GIG rho must be >= 0"));
        }
        if chi < F::zero() {
            return Err(SamplerError::InvalidParam("GIG chi must be >= 0"));
        }
        if rho == F::zero() && chi == F::zero() {
            return Err(SamplerError::InvalidParam("GIG rho and chi cannot both be 0"));
        }
        if rho == F::zero() && !(order < F::zero()) {
            return Err(SamplerError::InvalidParam("GIG with rho = 0 needs order < 0"));
        }
        if chi == F::zero() && !(order > F::zero()) {
            return Err(SamplerError::InvalidParam("GIG with chi = 0 needs order > 0"));
        }
        Ok(GigParams { order, rho, chi })
    }
}

/// Draw from the GIG law.
///
/// Boundary cases reduce to gamma (`chi = 0`) and inverse-gamma (`rho = 0`)
/// draws; the interior case uses Devroye's rejection sampler on the
/// log-transformed two-parameter form.
pub fn sample_gig<F: Scalar, R: Rng + ?Sized>(
    params: &GigParams<F>,
    rng: &mut R,
) -> Result<F, SamplerError> {
    // Re-validate so raw struct literals cannot bypass the invariants.
    let p = GigParams::new(params.order, params.rho, params.chi)?;
    let two = F::cast(2.0);
    if p.chi == F::zero() {
        // Gamma(order, rate = rho / 2).
        return Ok(F::gamma_draw(p.order, two / p.rho, rng));
    }
    if p.rho == F::zero() {
        // Inverse-gamma(-order, scale = chi / 2).
        return sample_inverse_gamma(-p.order, p.chi / two, rng);
    }

    let omega = (p.rho * p.chi).sqrt();
    let swap = p.order < F::zero();
    let lam = p.order.abs();
    let mut draw = gig_two_param(lam, omega, rng);
    if swap {
        draw = draw.recip();
    }
    Ok((draw * (p.chi / p.rho).sqrt()).max(F::min_positive_value()))
}

/// Devroye's sampler for the two-parameter GIG density proportional to
/// `x^{lam-1} exp(-omega (x + 1/x) / 2)` with `lam >= 0`, `omega > 0`.
fn gig_two_param<F: Scalar, R: Rng + ?Sized>(lam: F, omega: F, rng: &mut R) -> F {
    let zero = F::zero();
    let one = F::one();
    let two = F::cast(2.0);
    let four = F::cast(4.0);
    let half = F::cast(0.5);

    let alpha = (omega * omega + lam * lam).sqrt() - lam;

    let psi = |x: F| -> F {
        let base = -alpha * (x.cosh() - one);
        if lam > zero {
            base - lam * (x.exp() - x - one)
        } else {
            base
        }
    };
    let dpsi = |x: F| -> F {
        let base = -alpha * x.sinh();
        if lam > zero {
            base - lam * (x.exp() - one)
        } else {
            base
        }
    };

    let x = -psi(one);
    let t = if x > two {
        (two / (alpha + lam)).sqrt()
    } else if x < half {
        (four / (alpha + two * lam)).ln()
    } else {
        one
    };

    let x = -psi(-one);
    let s = if x > two {
        (four / (alpha * one.cosh() + lam)).sqrt()
    } else if x < half {
        let by_lam = if lam > zero { lam.recip() } else { F::infinity() };
        let by_alpha = (one + alpha.recip() + (alpha.powi(-2) + two / alpha).sqrt()).ln();
        by_lam.min(by_alpha)
    } else {
        one
    };

    let eta = -psi(t);
    let zeta = -dpsi(t);
    let theta = -psi(-s);
    let xi = dpsi(-s);
    let p = xi.recip();
    let r = zeta.recip();
    let td = t - r * eta;
    let sd = s - p * theta;
    let q = td + sd;

    let total = p + q + r;
    loop {
        let u = F::unit_uniform(rng);
        let v = F::unit_uniform(rng);
        let w = F::unit_uniform(rng);
        let cand = if u < q / total {
            -sd + q * v
        } else if u < (q + r) / total {
            td - r * v.ln()
        } else {
            -sd + p * v.ln()
        };
        let envelope = if cand >= -sd && cand <= td {
            one
        } else if cand > td {
            (-eta - zeta * (cand - t)).exp()
        } else {
            (-theta + xi * (cand + s)).exp()
        };
        if w * envelope <= psi(cand).exp() {
            let mode = lam / omega + (one + (lam / omega).powi(2)).sqrt();
            return mode * cand.exp();
        }
    }
}

/// Draw `beta ~ Normal(V X^T y, sigma2 V)` with
/// `V = (X^T X + diag(s_inv_diag))^{-1}`, sampling through a Cholesky
/// factorization of the precision matrix.
///
/// Non-positive-definite factorizations are retried with diagonal jitter
/// stepped through `1e-10 .. 1e-6`; if every level fails the call reports
/// [`SamplerError::FactorizationFailure`].
pub fn sample_mvn_precision<F: Scalar, R: Rng + ?Sized>(
    xt_y: &[F],
    xtx: &Matrix<F>,
    s_inv_diag: &[F],
    sigma2: F,
    rng: &mut R,
) -> Result<Vec<F>, SamplerError> {
    let n = xt_y.len();
    if xtx.rows() != n || xtx.cols() != n {
        return Err(SamplerError::DimensionMismatch("XtX must be n x n"));
    }
    if s_inv_diag.len() != n {
        return Err(SamplerError::DimensionMismatch(
            "prior precision diagonal must have length n",
        ));
    }
    if s_inv_diag.iter().any(|&d| !(d > F::zero()) || !d.is_finite()) {
        return Err(SamplerError::InvalidParam(
            "prior precision diagonal must be strictly positive",
        ));
    }
    if !(sigma2 > F::zero()) || !sigma2.is_finite() {
        return Err(SamplerError::InvalidParam("sigma2 must be > 0"));
    }

    const JITTERS: [f64; 6] = [0.0, 1e-10, 1e-9, 1e-8, 1e-7, 1e-6];
    for &jitter in &JITTERS {
        let j = F::cast(jitter);
        let mut precision = xtx.clone();
        for i in 0..n {
            precision[(i, i)] += s_inv_diag[i] + j;
        }
        let l = match cholesky_lower(&precision) {
            Ok(l) => l,
            Err(_) => continue,
        };
        let w = solve_lower(&l, xt_y);
        let mu = solve_lower_transpose(&l, &w);
        let z: Vec<F> = (0..n).map(|_| F::standard_normal(rng)).collect();
        let u = solve_lower_transpose(&l, &z);
        let sd = sigma2.sqrt();
        return Ok((0..n).map(|i| mu[i] + sd * u[i]).collect());
    }
    Err(SamplerError::FactorizationFailure(JITTERS.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_gamma_rejects_bad_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_inverse_gamma(0.0, 1.0, &mut rng).is_err());
        assert!(sample_inverse_gamma(-1.0, 1.0, &mut rng).is_err());
        assert!(sample_inverse_gamma(1.0, 0.0, &mut rng).is_err());
        assert!(sample_inverse_gamma(f64::NAN, 1.0, &mut rng).is_err());
    }

    #[test]
    fn inverse_gamma_small_scale_concentrates_at_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let draws: Vec<f64> = (0..2000)
            .map(|_| sample_inverse_gamma(2.0, 1e-9, &mut rng).unwrap())
            .collect();
        assert!(draws.iter().all(|&z| z > 0.0));
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        assert!(mean < 1e-6, "scale -> 0 limit should concentrate at 0, mean {mean}");
    }

    #[test]
    fn inverse_gaussian_rejects_bad_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(sample_inverse_gaussian(0.0, 1.0, &mut rng).is_err());
        assert!(sample_inverse_gaussian(1.0, -1.0, &mut rng).is_err());
    }

    #[test]
    fn gig_param_invariants() {
        assert!(GigParams::new(1.0, 0.0, 0.0).is_err());
        assert!(GigParams::new(1.0, -2.0, 3.0).is_err());
        assert!(GigParams::new(1.0, 0.0, 3.0).is_err()); // rho = 0 needs order < 0
        assert!(GigParams::new(-1.0, 2.0, 0.0).is_err()); // chi = 0 needs order > 0
        assert!(GigParams::new(-1.0, 0.0, 3.0).is_ok());
        assert!(GigParams::new(1.5, 2.0, 0.0).is_ok());
        assert!(GigParams::new(0.0, 2.0, 3.0).is_ok());
    }

    #[test]
    fn gig_draws_are_positive_and_deterministic() {
        let params = GigParams::new(-0.5f64, 1.0, 2.0).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..500 {
            let x = sample_gig(&params, &mut a).unwrap();
            let y = sample_gig(&params, &mut b).unwrap();
            assert!(x > 0.0);
            assert_eq!(x, y);
        }
    }

    #[test]
    fn mvn_prior_only_case() {
        // XtX = 0, S^{-1} = I: mean 0, covariance sigma2 I.
        let n = 4;
        let xtx = Matrix::<f64>::zeros(n, n);
        let xt_y = vec![0.0; n];
        let s_inv = vec![1.0; n];
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let sigma2 = 2.25;
        let m = 20_000;
        let mut sums = vec![0.0; n];
        let mut sq = vec![0.0; n];
        for _ in 0..m {
            let b = sample_mvn_precision(&xt_y, &xtx, &s_inv, sigma2, &mut rng).unwrap();
            for i in 0..n {
                sums[i] += b[i];
                sq[i] += b[i] * b[i];
            }
        }
        for i in 0..n {
            let mean = sums[i] / m as f64;
            let var = sq[i] / m as f64 - mean * mean;
            // SE of the mean is sqrt(sigma2/m) ~ 0.0106.
            assert!(mean.abs() < 4.5 * (sigma2 / m as f64).sqrt(), "mean {mean}");
            // SE of the variance is sigma2 sqrt(2/m) ~ 0.0225.
            assert!((var - sigma2).abs() < 5.0 * sigma2 * (2.0 / m as f64).sqrt(), "var {var}");
        }
    }

    #[test]
    fn mvn_two_by_two_hand_case() {
        // XtX = I, S^{-1} = I, Xt_y = (2, 0): mean (1, 0), covariance I/2.
        let mut xtx = Matrix::<f64>::zeros(2, 2);
        xtx[(0, 0)] = 1.0;
        xtx[(1, 1)] = 1.0;
        let xt_y = vec![2.0, 0.0];
        let s_inv = vec![1.0, 1.0];
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let m = 40_000;
        let mut sum0 = 0.0;
        let mut sum1 = 0.0;
        let mut sq0 = 0.0;
        for _ in 0..m {
            let b = sample_mvn_precision(&xt_y, &xtx, &s_inv, 1.0, &mut rng).unwrap();
            sum0 += b[0];
            sum1 += b[1];
            sq0 += b[0] * b[0];
        }
        let m0 = sum0 / m as f64;
        let m1 = sum1 / m as f64;
        let v0 = sq0 / m as f64 - m0 * m0;
        let se_mean = (0.5 / m as f64).sqrt();
        assert!((m0 - 1.0).abs() < 4.5 * se_mean, "mean0 {m0}");
        assert!(m1.abs() < 4.5 * se_mean, "mean1 {m1}");
        assert!((v0 - 0.5).abs() < 5.0 * 0.5 * (2.0 / m as f64).sqrt(), "var0 {v0}");
    }

    #[test]
    fn mvn_rejects_nonpositive_prior_precision() {
        let xtx = Matrix::<f64>::zeros(2, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let err =
            sample_mvn_precision(&[0.0, 0.0], &xtx, &[1.0, 0.0], 1.0, &mut rng).unwrap_err();
        assert!(matches!(err, SamplerError::InvalidParam(_)));
    }
}
