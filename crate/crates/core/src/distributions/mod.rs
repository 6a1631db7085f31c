//! Exact samplers and special functions.

mod poisson;
mod rng;
mod special;
mod zipf;

pub use poisson::poisson_sample;
pub use rng::{derive_seed, rng_for, SimRng, Stream};
pub(crate) use special::scaled_hurwitz_tail;
pub use special::{beta, gamma, hurwitz_tail, ln_beta, ln_gamma, zeta, TailSum};
pub use zipf::{UrnId, ZipfLaw};
