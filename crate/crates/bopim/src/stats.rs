//! Shared empirical summaries.
//!
//! One quantile rule is used everywhere in this crate: linear interpolation
//! between order statistics. For sorted values `x_0 <= ... <= x_{m-1}` and
//! level `alpha`, the quantile is `x_lo + frac * (x_{lo+1} - x_lo)` where
//! `lo = floor(alpha * (m - 1))` and `frac` is the fractional remainder.

use crate::scalar::Scalar;

/// Quantile of an ascending slice by linear interpolation.
///
/// `alpha` must lie in `[0, 1]` and the slice must be non-empty.
pub fn quantile_sorted<F: Scalar>(sorted: &[F], alpha: F) -> F {
    assert!(!sorted.is_empty(), "quantile of empty slice");
    assert!(
        alpha >= F::zero() && alpha <= F::one(),
        "quantile level outside [0, 1]"
    );
    let m = sorted.len();
    if m == 1 {
        return sorted[0];
    }
    let h = alpha * F::cast_usize(m - 1);
    let lo = h.floor().to_usize().expect("index fits usize").min(m - 2);
    let frac = h - F::cast_usize(lo);
    sorted[lo] + frac * (sorted[lo + 1] - sorted[lo])
}

/// Median via [`quantile_sorted`] on an unsorted slice.
pub fn median<F: Scalar>(values: &[F]) -> F {
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("values must not be NaN"));
    quantile_sorted(&v, F::cast(0.5))
}

/// Sample mean.
pub fn mean<F: Scalar>(values: &[F]) -> F {
    values.iter().copied().sum::<F>() / F::cast_usize(values.len())
}

/// Unbiased sample variance (zero for fewer than two values).
pub fn sample_variance<F: Scalar>(values: &[F]) -> F {
    let m = values.len();
    if m < 2 {
        return F::zero();
    }
    let mu = mean(values);
    let ss = values.iter().map(|&v| (v - mu) * (v - mu)).sum::<F>();
    ss / F::cast_usize(m - 1)
}
