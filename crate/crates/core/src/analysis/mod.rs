//! Estimators, the replicate harness and theory-vs-simulation reports.

mod estimators;
mod replicates;
mod reports;

pub use estimators::{estimate_theta, EstimatorResult};
pub use replicates::{run_replicates, run_replicates_sequential};
#[cfg(feature = "parallel")]
pub use replicates::run_replicates_parallel;
pub use reports::{
    compare_covariance, compare_simon_limits, compare_variance, divergence_report, MomentReport,
    ReportRow, SampleStats,
};
