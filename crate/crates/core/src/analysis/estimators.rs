use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::occupancy::Trajectory;

/// The two exponent estimators at sample size `n`.
///
/// `theta_hat = log₂ R_n − log₂ R_{⌊n/2⌋}` (doubling estimator) and
/// `theta_star = R_{n,1} / R_n` (singleton ratio).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EstimatorResult {
    pub theta_hat: f64,
    pub theta_star: f64,
    pub n: u64,
    pub r_n: u64,
    pub r_half: u64,
    pub r_n1: u64,
}

impl EstimatorResult {
    pub fn from_counts(n: u64, r_n: u64, r_half: u64, r_n1: u64) -> Result<Self> {
        if r_half == 0 {
            return Err(Error::ZeroHalfCount);
        }
        if r_n == 0 || r_n1 > r_n || r_half > r_n {
            return Err(Error::Degenerate(format!(
                "inconsistent counts R_n={r_n}, R_half={r_half}, R_n1={r_n1}"
            )));
        }
        Ok(Self {
            theta_hat: (r_n as f64).log2() - (r_half as f64).log2(),
            theta_star: r_n1 as f64 / r_n as f64,
            n,
            r_n,
            r_half,
            r_n1,
        })
    }
}

/// Both estimators from the last checkpoint and the one at `⌊n/2⌋`.
pub fn estimate_theta(traj: &Trajectory) -> Result<EstimatorResult> {
    let last = traj.last().ok_or(Error::MissingCheckpoint(0))?;
    let half_n = last.n / 2;
    let half = traj.at(half_n).ok_or(Error::MissingCheckpoint(half_n))?;
    EstimatorResult::from_counts(last.n, last.r, half.r, last.r_k[0])
}
