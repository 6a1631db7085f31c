//! Simulation and limit theory for infinite urn schemes and Simon-type text models.
//!
//! The crate is organised bottom-up:
//!
//! - [`distributions`]: special functions, the Zipf law with its exact sampler,
//!   Poisson variates and the seeded RNG streams every run draws from.
//! - [`occupancy`]: streaming counts-of-counts bookkeeping and checkpointed
//!   trajectories of `(n, R_n, R_{n,1..kmax})`.
//! - [`models`]: the five ball-placement generators.
//! - [`theory`]: closed-form limits and exact Poissonized moment series.
//! - [`analysis`]: the two exponent estimators, the replicate harness and
//!   theory-vs-simulation reports.
//! - [`corpus`]: tokenization of real texts into the same pipeline.
//!
//! Replicates run on rayon when the `parallel` feature is enabled (the default)
//! and sequentially otherwise; results are identical either way.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod corpus;
pub mod distributions;
mod error;
pub mod models;
pub mod occupancy;
pub mod theory;

pub use error::{Error, Result};
