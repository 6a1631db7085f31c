use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::Args;
use urnlab::analysis::{estimate_theta, run_replicates};
use urnlab::distributions::derive_seed;

use crate::args::{flag_error, set_jobs, ModelArgs};
use crate::manifest::{ensure_dir, RunManifest};

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Output directory for replicate CSVs, summary.csv and manifest.json.
    #[arg(long)]
    pub out: PathBuf,
}

pub fn run(args: &SimulateArgs) -> Result<bool, String> {
    let started = Instant::now();
    let cfg = args.model.config()?;
    let seed = args.model.seed()?;
    set_jobs(args.model.jobs)?;
    ensure_dir(&args.out)?;
    let trajs = run_replicates(&cfg, args.model.reps, seed, &args.model.options()).map_err(flag_error)?;

    let mut manifest = RunManifest::new("simulate", args.model.params(&cfg), Some(seed));
    let width = (args.model.reps.max(2) - 1).to_string().len().max(4);
    let mut summary = String::from("replicate,seed,n,R,R1,theta_hat,theta_star\n");
    for (r, t) in trajs.iter().enumerate() {
        manifest.write_output(&args.out, &format!("replicate_{r:0width$}.csv"), &t.to_csv())?;
        let last = t.last().expect("schedule is never empty");
        let (hat, star) = match estimate_theta(t) {
            Ok(e) => (e.theta_hat.to_string(), e.theta_star.to_string()),
            Err(_) => (String::new(), String::new()),
        };
        let _ = writeln!(
            summary,
            "{r},{},{},{},{},{hat},{star}",
            derive_seed(seed, r as u64),
            last.n,
            last.r,
            last.exactly(1)
        );
    }
    manifest.write_output(&args.out, "summary.csv", &summary)?;
    manifest.finish(&args.out, started)?;
    Ok(true)
}
