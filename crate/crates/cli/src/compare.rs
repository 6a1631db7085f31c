use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use urnlab::analysis::{compare_covariance, compare_simon_limits, compare_variance, divergence_report, run_replicates};
use urnlab::models::Model;

use crate::args::{flag_error, set_jobs, ModelArgs};
use crate::manifest::{ensure_dir, RunManifest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Against {
    Variance,
    Covariance,
    SimonLimits,
    Divergence,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, value_enum)]
    pub against: Against,
    /// Exact counts compared in covariance mode, e.g. `1,2`.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    pub r_list: Vec<usize>,
    /// Simon mode reports R_{n,j}/n for j < m.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Also write report.json, report.csv and manifest.json here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &CompareArgs) -> Result<bool, String> {
    let started = Instant::now();
    let cfg = args.model.config()?;
    let seed = args.model.seed()?;
    set_jobs(args.model.jobs)?;
    let opts = args.model.options();
    let reps = args.model.reps;
    let wrong_model = |allowed: &str| format!("--against {:?} needs --model {allowed}", args.against).to_lowercase();

    let report = match (args.against, cfg.model) {
        (Against::Variance, Model::Elementary { theta } | Model::Poissonized { theta }) => {
            let trajs = run_replicates(&cfg, reps, seed, &opts).map_err(flag_error)?;
            compare_variance(&trajs, theta).map_err(flag_error)?
        }
        (Against::Variance, _) => return Err(wrong_model("elementary or poissonized")),
        (Against::Covariance, Model::Elementary { theta }) => {
            let trajs = run_replicates(&cfg, reps, seed, &opts).map_err(flag_error)?;
            compare_covariance(&trajs, theta, &args.r_list).map_err(flag_error)?
        }
        (Against::Covariance, _) => return Err(wrong_model("elementary")),
        (Against::SimonLimits, Model::Simon { p }) => {
            let trajs = run_replicates(&cfg, reps, seed, &opts).map_err(flag_error)?;
            compare_simon_limits(&trajs, p, args.m).map_err(flag_error)?
        }
        (Against::SimonLimits, _) => return Err(wrong_model("simon")),
        (Against::Divergence, Model::Mod1 { .. } | Model::Mod2 { .. }) => {
            divergence_report(&cfg, reps, seed, &opts).map_err(flag_error)?
        }
        (Against::Divergence, _) => return Err(wrong_model("mod1 or mod2")),
    }
    .with_seed(seed);

    let json = report.to_json();
    crate::emit(&json);
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        let mut params = args.model.params(&cfg);
        params["against"] = serde_json::json!(format!("{:?}", args.against).to_lowercase());
        let mut manifest = RunManifest::new("compare", params, Some(seed));
        manifest.write_output(dir, "report.json", &(json + "\n"))?;
        manifest.write_output(dir, "report.csv", &report.to_csv())?;
        manifest.finish(dir, started)?;
    }
    Ok(report.passed())
}
