//! Bayesian optimization for influence maximization on temporal networks.
//!
//! The pipeline: parse timestamped contacts into a [`temporal_graph::TemporalGraph`],
//! estimate the expected Susceptible-Infected spread of a seed set by Monte
//! Carlo ([`diffusion`]), fit a sparse linear surrogate of the spread
//! function by Gibbs sampling under a shrinkage prior ([`gibbs`]), and pick
//! the next seed set from the top-k posterior medians ([`optimizer`]).
//! Greedy/CELF and random baselines live in [`baselines`]; validation and
//! uncertainty summaries in [`metrics`].
//!
//! All statistical code is generic over the [`scalar::Scalar`] float type;
//! the `*64` aliases below fix `f64`, which is what the CLI uses.

pub mod baselines;
pub mod diffusion;
pub mod gibbs;
pub mod linalg;
pub mod metrics;
pub mod optimizer;
pub mod samplers;
pub mod scalar;
pub mod stats;
pub mod synthetic;
pub mod temporal_graph;

pub use diffusion::{SeedVector, SpreadEstimate};
pub use gibbs::{Dataset, GibbsConfig, PosteriorDraws, Prior};
pub use optimizer::{BopimConfig, RunResult};
pub use scalar::Scalar;
pub use temporal_graph::{ContactList, TemporalGraph};

pub type SpreadEstimate64 = diffusion::SpreadEstimate<f64>;
pub type Dataset64 = gibbs::Dataset<f64>;
pub type GibbsConfig64 = gibbs::GibbsConfig<f64>;
pub type PosteriorDraws64 = gibbs::PosteriorDraws<f64>;
pub type BopimConfig64 = optimizer::BopimConfig<f64>;
pub type RunResult64 = optimizer::RunResult<f64>;
pub type ValidationReport64 = metrics::ValidationReport<f64>;
