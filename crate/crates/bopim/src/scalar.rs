//! Scalar abstraction over the floating-point type used by all statistical code.
//!
//! Everything downstream of the graph layer (spread estimates, random variate
//! generation, Gibbs chains, metrics) is generic over [`Scalar`], so the whole
//! pipeline runs in `f32` or `f64`. Concrete `f64` aliases live at the crate
//! root; `f64` is what the CLI uses.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, NumCast, ToPrimitive};
use rand::distr::StandardUniform;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

/// Floating-point scalar: `f32` or `f64`.
///
/// Extends `num_traits::Float` with the two random primitives that have
/// optimized type-specific implementations in `rand_distr` (the ziggurat
/// normal and the Marsaglia-Tsang gamma). All other variate generators in
/// this crate are built on top of these.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum<Self>
    + Display
    + Debug
    + Send
    + Sync
    + 'static
{
    /// Draw from the standard normal N(0, 1).
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draw uniformly from `[0, 1)`.
    fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// Draw from Gamma(shape, scale). Both parameters must be positive and
    /// finite; callers validate before dispatching here.
    fn gamma_draw<R: Rng + ?Sized>(shape: Self, scale: Self, rng: &mut R) -> Self;

    /// Conversion from an `f64` constant.
    fn cast(x: f64) -> Self {
        <Self as NumCast>::from(x).expect("f64 constant converts to scalar")
    }

    /// Conversion from a count.
    fn cast_usize(x: usize) -> Self {
        <Self as FromPrimitive>::from_usize(x).expect("count converts to scalar")
    }
}

macro_rules! impl_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            fn unit_uniform<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardUniform.sample(rng)
            }

            fn gamma_draw<R: Rng + ?Sized>(shape: Self, scale: Self, rng: &mut R) -> Self {
                Gamma::new(shape, scale)
                    .expect("gamma parameters validated by caller")
                    .sample(rng)
            }
        }
    };
}

impl_scalar!(f32);
impl_scalar!(f64);
