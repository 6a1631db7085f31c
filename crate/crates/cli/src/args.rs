use clap::{Args, ValueEnum};
use serde_json::{json, Value};
use urnlab::models::{Model, ModelConfig, RunOptions};
use urnlab::occupancy::{CheckpointGrid, DEFAULT_KMAX};
use urnlab::Error;

pub const SEED_ENV: &str = "URNLAB_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Elementary,
    Poissonized,
    Simon,
    Mod1,
    Mod2,
}

impl ModelKind {
    fn name(self) -> &'static str {
        match self {
            Self::Elementary => "elementary",
            Self::Poissonized => "poissonized",
            Self::Simon => "simon",
            Self::Mod1 => "mod1",
            Self::Mod2 => "mod2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Grid {
    Geometric,
    Uniform,
    Both,
}

impl From<Grid> for CheckpointGrid {
    fn from(g: Grid) -> Self {
        match g {
            Grid::Geometric => CheckpointGrid::Geometric,
            Grid::Uniform => CheckpointGrid::Uniform,
            Grid::Both => CheckpointGrid::Both,
        }
    }
}

/// Flags shared by `simulate` and `compare`.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    #[arg(long, value_enum)]
    pub model: ModelKind,
    /// Balls per run (the Poisson mean for `poissonized`).
    #[arg(long)]
    pub n: u64,
    /// Zipf exponent for `elementary` and `poissonized`.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Zipf exponent of the fresh draws in `mod1` and `mod2`.
    #[arg(long)]
    pub beta: Option<f64>,
    /// Innovation probability for `simon`, `mod1` and `mod2`.
    #[arg(long)]
    pub p: Option<f64>,
    /// In `mod2`, re-toss every ball that lands in an empty urn.
    #[arg(long)]
    pub mod2_always_retoss: bool,
    #[arg(long, default_value_t = DEFAULT_KMAX)]
    pub kmax: usize,
    #[arg(long, default_value_t = 1)]
    pub reps: usize,
    /// Master seed; falls back to $URNLAB_SEED, then 0.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value = "both")]
    pub checkpoints: Grid,
    /// Worker threads for replicates (default: one per processor).
    #[arg(long)]
    pub jobs: Option<usize>,
}

fn require(flag: &str, v: Option<f64>, model: ModelKind) -> Result<f64, String> {
    v.ok_or_else(|| format!("--{flag} is required for model {}", model.name()))
}

fn forbid(flag: &str, v: Option<f64>, model: ModelKind) -> Result<(), String> {
    match v {
        Some(_) => Err(format!("--{flag} is not a parameter of {}", model.name())),
        None => Ok(()),
    }
}

/// One-line diagnostic that names the flag behind a library error.
pub fn flag_error(err: Error) -> String {
    match err {
        Error::Domain { name, value, expected } => format!("--{name} = {value} is invalid: expected {expected}"),
        other => other.to_string(),
    }
}

impl ModelArgs {
    pub fn config(&self) -> Result<ModelConfig, String> {
        let kind = self.model;
        if self.mod2_always_retoss && kind != ModelKind::Mod2 {
            return Err(format!("--mod2-always-retoss is not a parameter of {}", kind.name()));
        }
        let model = match kind {
            ModelKind::Elementary | ModelKind::Poissonized => {
                forbid("beta", self.beta, kind)?;
                forbid("p", self.p, kind)?;
                let theta = require("theta", self.theta, kind)?;
                if kind == ModelKind::Elementary {
                    Model::Elementary { theta }
                } else {
                    Model::Poissonized { theta }
                }
            }
            ModelKind::Simon => {
                forbid("theta", self.theta, kind)?;
                forbid("beta", self.beta, kind)?;
                Model::Simon { p: require("p", self.p, kind)? }
            }
            ModelKind::Mod1 | ModelKind::Mod2 => {
                forbid("theta", self.theta, kind)?;
                let beta = require("beta", self.beta, kind)?;
                let p = require("p", self.p, kind)?;
                if kind == ModelKind::Mod1 {
                    Model::Mod1 { beta, p }
                } else {
                    Model::Mod2 { beta, p, always_retoss: self.mod2_always_retoss }
                }
            }
        };
        if self.kmax == 0 {
            return Err("--kmax must be at least 1".into());
        }
        if self.reps == 0 {
            return Err("--reps must be at least 1".into());
        }
        let cfg = ModelConfig::new(model, self.n, 0);
        cfg.validate().map_err(flag_error)?;
        Ok(cfg)
    }

    pub fn options(&self) -> RunOptions {
        RunOptions { kmax: self.kmax, grid: self.checkpoints.into(), extra: Vec::new() }
    }

    pub fn seed(&self) -> Result<u64, String> {
        resolve_seed(self.seed)
    }

    pub fn params(&self, cfg: &ModelConfig) -> Value {
        let mut v = serde_json::to_value(cfg).expect("config serializes");
        let obj = v.as_object_mut().expect("config is an object");
        obj.remove("seed");
        obj.insert("kmax".into(), json!(self.kmax));
        obj.insert("reps".into(), json!(self.reps));
        obj.insert("checkpoints".into(), json!(format!("{:?}", self.checkpoints).to_lowercase()));
        v
    }
}

pub fn resolve_seed(flag: Option<u64>) -> Result<u64, String> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(s) => s.trim().parse().map_err(|_| format!("{SEED_ENV} = `{s}` is not an unsigned 64-bit integer")),
        Err(_) => Ok(0),
    }
}

/// Sizes the global rayon pool. Only the first call in a process takes effect.
pub fn set_jobs(jobs: Option<usize>) -> Result<(), String> {
    if let Some(j) = jobs {
        if j == 0 {
            return Err("--jobs must be at least 1".into());
        }
        let _ = rayon::ThreadPoolBuilder::new().num_threads(j).build_global();
    }
    Ok(())
}
