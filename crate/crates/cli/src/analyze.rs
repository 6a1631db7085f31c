use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use urnlab::analysis::EstimatorResult;
use urnlab::corpus::{analyze_text, tokenize, TokenizerRules};
use urnlab::occupancy::{Trajectory, DEFAULT_KMAX};

use crate::args::set_jobs;
use crate::manifest::{ensure_dir, RunManifest};

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// UTF-8 text files; `-` or nothing reads standard input.
    pub paths: Vec<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    /// Keep letter case instead of folding to lowercase.
    #[arg(long)]
    pub keep_case: bool,
    /// Also write one trajectory CSV and estimator JSON per input, plus manifest.json.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Serialize)]
pub struct CorpusResult {
    pub source: String,
    #[serde(flatten)]
    pub estimators: EstimatorResult,
}

fn read_source(path: &Path) -> Result<(String, Vec<u8>), String> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        std::io::stdin().read_to_end(&mut buf).map_err(|e| format!("stdin: {e}"))?;
        return Ok(("-".into(), buf));
    }
    let bytes = std::fs::read(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((path.display().to_string(), bytes))
}

fn analyze_one(path: &Path, kmax: usize, rules: TokenizerRules) -> Result<(CorpusResult, Trajectory), String> {
    let (source, bytes) = read_source(path)?;
    let stream = tokenize(&bytes, source.clone(), rules).map_err(|e| format!("{source}: {e}"))?;
    let (traj, estimators) = analyze_text(&stream, kmax).map_err(|e| format!("{source}: {e}"))?;
    Ok((CorpusResult { source, estimators }, traj))
}

pub fn run(args: &AnalyzeArgs) -> Result<bool, String> {
    let started = Instant::now();
    if args.kmax == 0 {
        return Err("--kmax must be at least 1".into());
    }
    set_jobs(args.jobs)?;
    let paths = if args.paths.is_empty() { vec![PathBuf::from("-")] } else { args.paths.clone() };
    let rules = TokenizerRules { case_fold: !args.keep_case };
    let results: Vec<(CorpusResult, Trajectory)> = paths
        .par_iter()
        .map(|p| analyze_one(p, args.kmax, rules))
        .collect::<Result<_, _>>()?;

    let summaries: Vec<&CorpusResult> = results.iter().map(|(r, _)| r).collect();
    crate::emit(&serde_json::to_string_pretty(&summaries).expect("results serialize"));
    if let Some(dir) = &args.out {
        ensure_dir(dir)?;
        let params = json!({"paths": paths, "kmax": args.kmax, "case_fold": rules.case_fold});
        let mut manifest = RunManifest::new("analyze", params, None);
        for (i, (res, traj)) in results.iter().enumerate() {
            let stem = Path::new(&res.source)
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .filter(|s| s != "-")
                .unwrap_or_else(|| "stdin".into());
            let base = format!("{i:03}_{stem}");
            manifest.write_output(dir, &format!("{base}.csv"), &traj.to_csv())?;
            let body = serde_json::to_string_pretty(res).expect("result serializes") + "\n";
            manifest.write_output(dir, &format!("{base}.json"), &body)?;
        }
        manifest.finish(dir, started)?;
    }
    Ok(true)
}
