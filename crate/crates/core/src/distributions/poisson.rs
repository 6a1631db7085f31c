use rand::Rng;
use rand_distr::{Distribution, Poisson};

use crate::error::{Error, Result};

/// An exact Poisson(mean) variate. `mean = 0` returns 0 without touching the RNG.
pub fn poisson_sample<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64> {
    if !(mean >= 0.0) || !mean.is_finite() {
        return Err(Error::Domain {
            name: "mean",
            value: mean,
            expected: "nonnegative finite real",
        });
    }
    if mean == 0.0 {
        return Ok(0);
    }
    let dist = Poisson::new(mean).map_err(|_| Error::Domain {
        name: "mean",
        value: mean,
        expected: "mean accepted by the Poisson sampler",
    })?;
    Ok(dist.sample(rng) as u64)
}
