use rand::Rng;
use serde::{Deserialize, Serialize};

use super::special::zeta;
use crate::error::{check_open_unit, Result};

/// Urn (word type) identifier.
pub type UrnId = u64;

/// The pure Zipf law `p_j = C j^(-1/θ)`, `j ≥ 1`, with `C = 1/ζ(1/θ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZipfLaw {
    theta: f64,
    exponent: f64,
    normalizer: f64,
    // Rejection constants: 1/(s-1) and 2^(s-1).
    inv_sm1: f64,
    b: f64,
}

impl ZipfLaw {
    pub fn new(theta: f64) -> Result<Self> {
        check_open_unit("theta", theta)?;
        let exponent = 1.0 / theta;
        let normalizer = 1.0 / zeta(exponent)?;
        Ok(Self {
            theta,
            exponent,
            normalizer,
            inv_sm1: 1.0 / (exponent - 1.0),
            b: (exponent - 1.0).exp2(),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `s = 1/θ`.
    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    /// `C = 1/ζ(s)`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// `P(urn j)`; zero for `j = 0`.
    pub fn pmf(&self, j: u64) -> f64 {
        if j == 0 {
            return 0.0;
        }
        self.normalizer * (j as f64).powf(-self.exponent)
    }

    /// `P(urn ≤ j)` by summing the pmf.
    pub fn cdf(&self, j: u64) -> f64 {
        (1..=j).map(|i| self.pmf(i)).sum::<f64>().min(1.0)
    }

    /// One exact draw from the infinite-support law.
    ///
    /// Devroye's rejection method: propose `X = ⌊U^(-1/(s-1))⌋`, whose law is
    /// the discretised Pareto density `∝ x^(-s)` on `[1, ∞)`, and accept with
    /// the ratio against `j^(-s)`. Expected iterations stay below 2^(s-1)/(s-1) · (1 - 2^(1-s))
    /// which is bounded on θ ∈ (0, 1).
    ///
    /// Draws too large for an integer id (≥ 2^63, only reachable for θ close
    /// to 1) are keyed by their floating-point bit pattern with the top bit
    /// set, which keeps them distinct from each other and from ordinary ids.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> UrnId {
        let sm1 = self.exponent - 1.0;
        loop {
            let u = 1.0 - rng.random::<f64>();
            let v = rng.random::<f64>();
            let x = u.powf(-self.inv_sm1).floor();
            if !x.is_finite() {
                continue;
            }
            let t_minus_1 = (sm1 * (1.0 / x).ln_1p()).exp_m1();
            let t = 1.0 + t_minus_1;
            if v * x * t_minus_1 / (self.b - 1.0) <= t / self.b {
                return float_to_urn(x);
            }
        }
    }
}

const HUGE_ID_FLAG: u64 = 1 << 63;

fn float_to_urn(x: f64) -> UrnId {
    if x < HUGE_ID_FLAG as f64 {
        x as u64
    } else {
        x.to_bits() | HUGE_ID_FLAG
    }
}
