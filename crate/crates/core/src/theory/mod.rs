//! Closed-form limit expressions and exact Poissonized moment series.
//!
//! All Karlin-type quantities are instantiated for the pure Zipf law
//! `p_j = C j^(-1/θ)`, whose counting function is `α(x) = ⌊(Cx)^θ⌋`; the
//! slowly varying factor `L(x)` is therefore the constant `C^θ`.

mod janson;
mod karlin;
mod poissonized;
mod simon;

pub use janson::{janson_embedding, IncrementLaw, JansonReport};
pub use karlin::{alpha, fclt_covariance, k_coefficient, karlin_covariance, karlin_variance, karlin_variance_coefficient};
pub use poissonized::{occupancy_series, poissonized_moments, OccupancyEvent, PoissonizedMoments, SeriesMoments};
pub use simon::{simon_limit_fraction, simon_limit_tail, yule_simon_pmf, yule_simon_tail};

use serde::Serialize;

use crate::distributions::ZipfLaw;
use crate::error::{check_open_unit, Result};

/// Parameters shared by the closed-form evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryParams {
    pub theta: f64,
    pub p: f64,
    /// Zipf normalizer `C = 1/ζ(1/θ)`.
    pub normalizer: f64,
    pub kmax: usize,
}

impl TheoryParams {
    pub fn new(theta: f64, p: f64, kmax: usize) -> Result<Self> {
        check_open_unit("p", p)?;
        let law = ZipfLaw::new(theta)?;
        Ok(Self {
            theta,
            p,
            normalizer: law.normalizer(),
            kmax,
        })
    }

    pub fn law(&self) -> ZipfLaw {
        ZipfLaw::new(self.theta).expect("validated at construction")
    }

    /// `L(x) ≡ C^θ` for the pure Zipf law.
    pub fn slowly_varying(&self) -> f64 {
        self.normalizer.powf(self.theta)
    }

    /// `ρ = 1/(1 - p)`.
    pub fn rho(&self) -> f64 {
        1.0 / (1.0 - self.p)
    }
}

pub(crate) fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_derive_constants() {
        let t = TheoryParams::new(0.5, 0.5, 10).unwrap();
        let c = 6.0 / std::f64::consts::PI.powi(2);
        assert!((t.normalizer - c).abs() < 1e-14);
        assert!((t.slowly_varying() - c.sqrt()).abs() < 1e-14);
        assert_eq!(t.rho(), 2.0);
        assert!(TheoryParams::new(0.5, 1.0, 10).is_err());
        assert!(TheoryParams::new(1.0, 0.5, 10).is_err());
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(5), 120.0);
    }
}
