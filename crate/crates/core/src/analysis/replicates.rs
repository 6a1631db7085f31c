use crate::distributions::derive_seed;
use crate::error::Result;
use crate::models::{run, ModelConfig, RunOptions};
use crate::occupancy::Trajectory;

fn replicate(config: &ModelConfig, opts: &RunOptions, master_seed: u64, r: usize) -> Result<Trajectory> {
    run(&config.with_seed(derive_seed(master_seed, r as u64)), opts)
}

/// `reps` independent runs; replicate `r` uses seed `derive_seed(master_seed, r)`.
///
/// Runs on the rayon pool when the `parallel` feature is on. Output order and
/// content do not depend on scheduling.
pub fn run_replicates(
    config: &ModelConfig,
    reps: usize,
    master_seed: u64,
    opts: &RunOptions,
) -> Result<Vec<Trajectory>> {
    #[cfg(feature = "parallel")]
    {
        run_replicates_parallel(config, reps, master_seed, opts)
    }
    #[cfg(not(feature = "parallel"))]
    {
        run_replicates_sequential(config, reps, master_seed, opts)
    }
}

pub fn run_replicates_sequential(
    config: &ModelConfig,
    reps: usize,
    master_seed: u64,
    opts: &RunOptions,
) -> Result<Vec<Trajectory>> {
    config.validate()?;
    (0..reps).map(|r| replicate(config, opts, master_seed, r)).collect()
}

#[cfg(feature = "parallel")]
pub fn run_replicates_parallel(
    config: &ModelConfig,
    reps: usize,
    master_seed: u64,
    opts: &RunOptions,
) -> Result<Vec<Trajectory>> {
    use rayon::prelude::*;
    config.validate()?;
    (0..reps)
        .into_par_iter()
        .map(|r| replicate(config, opts, master_seed, r))
        .collect()
}
