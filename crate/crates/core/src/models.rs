//! The five ball-placement generators.
//!
//! Each generator is an iterator of urn ids; [`run`] feeds it through
//! [`record_checkpoints`]. Randomness comes from two ChaCha streams of the
//! run's seed: [`Stream::Placement`] for Zipf urn draws and
//! [`Stream::Auxiliary`] for everything else (Poisson ball counts, re-toss
//! coins, previous-ball picks). Simon's model has no Zipf draws and uses the
//! placement stream for its coins and picks. Keeping Zipf draws on their own
//! stream is what makes the re-toss models with `p = 1` reproduce the
//! elementary model draw for draw.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::distributions::{poisson_sample, rng_for, SimRng, Stream, UrnId, ZipfLaw};
use crate::error::{check_open_unit, Error, Result};
use crate::occupancy::{record_checkpoints, CheckpointGrid, Trajectory, UrnCounts, DEFAULT_KMAX};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Model {
    /// i.i.d. placements from `ZipfLaw(theta)`.
    Elementary { theta: f64 },
    /// The elementary model run for `N ~ Poisson(n)` balls.
    Poissonized { theta: f64 },
    /// New urn with probability `p`, otherwise join a uniformly chosen previous ball.
    Simon { p: f64 },
    /// Zipf(beta) draw, then every ball after the first re-tossed with probability `1 - p`.
    Mod1 { beta: f64, p: f64 },
    /// Zipf(beta) draw; only balls landing in empty urns are re-tossed.
    /// With `always_retoss` they are re-tossed with probability 1 instead of `1 - p`.
    Mod2 {
        beta: f64,
        p: f64,
        #[serde(default)]
        always_retoss: bool,
    },
}

impl Model {
    pub fn name(&self) -> &'static str {
        match self {
            Model::Elementary { .. } => "elementary",
            Model::Poissonized { .. } => "poissonized",
            Model::Simon { .. } => "simon",
            Model::Mod1 { .. } => "mod1",
            Model::Mod2 { .. } => "mod2",
        }
    }

    /// Zipf exponent parameter, if the model samples a Zipf law.
    pub fn zipf_theta(&self) -> Option<f64> {
        match *self {
            Model::Elementary { theta } | Model::Poissonized { theta } => Some(theta),
            Model::Mod1 { beta, .. } | Model::Mod2 { beta, .. } => Some(beta),
            Model::Simon { .. } => None,
        }
    }

    pub fn innovation(&self) -> Option<f64> {
        match *self {
            Model::Simon { p } | Model::Mod1 { p, .. } | Model::Mod2 { p, .. } => Some(p),
            _ => None,
        }
    }
}

/// One run: model, horizon and seed. For the Poissonized model `n` is the Poisson mean.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    #[serde(flatten)]
    pub model: Model,
    pub n: u64,
    pub seed: u64,
}

impl ModelConfig {
    pub fn new(model: Model, n: u64, seed: u64) -> Self {
        Self { model, n, seed }
    }

    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        self.check(false)
    }

    fn check(&self, allow_unit_p: bool) -> Result<()> {
        if let Some(theta) = self.model.zipf_theta() {
            let name = match self.model {
                Model::Elementary { .. } | Model::Poissonized { .. } => "theta",
                _ => "beta",
            };
            check_open_unit(name, theta)?;
        }
        if let Some(p) = self.model.innovation() {
            let boundary = allow_unit_p && p == 1.0 && !matches!(self.model, Model::Simon { .. });
            if !boundary {
                check_open_unit("p", p)?;
            }
        }
        Ok(())
    }
}

/// Checkpointing options shared by all generators.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOptions {
    pub kmax: usize,
    pub grid: CheckpointGrid,
    /// Extra checkpoints merged into the grid; entries beyond the horizon are dropped.
    pub extra: Vec<u64>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            kmax: DEFAULT_KMAX,
            grid: CheckpointGrid::Both,
            extra: Vec::new(),
        }
    }
}

impl RunOptions {
    pub fn schedule(&self, horizon: u64) -> Vec<u64> {
        let mut s = self.grid.schedule(horizon);
        s.extend(self.extra.iter().copied().filter(|&e| e <= horizon));
        if s.is_empty() {
            s.push(0);
        }
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// i.i.d. Zipf placements.
#[derive(Debug, Clone)]
pub struct ElementaryStream {
    law: ZipfLaw,
    rng: SimRng,
    remaining: u64,
}

impl ElementaryStream {
    pub fn new(law: ZipfLaw, seed: u64, balls: u64) -> Self {
        Self {
            law,
            rng: rng_for(seed, Stream::Placement),
            remaining: balls,
        }
    }
}

impl Iterator for ElementaryStream {
    type Item = UrnId;

    fn next(&mut self) -> Option<UrnId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(self.law.sample(&mut self.rng))
    }
}

/// Simon's process. Urns are numbered 1, 2, … in order of opening.
#[derive(Debug, Clone)]
pub struct SimonStream {
    p: f64,
    rng: SimRng,
    balls: Vec<UrnId>,
    next_urn: UrnId,
    remaining: u64,
}

impl SimonStream {
    pub fn new(p: f64, seed: u64, balls: u64) -> Self {
        Self {
            p,
            rng: rng_for(seed, Stream::Placement),
            balls: Vec::with_capacity(balls.min(1 << 26) as usize),
            next_urn: 1,
            remaining: balls,
        }
    }
}

impl Iterator for SimonStream {
    type Item = UrnId;

    fn next(&mut self) -> Option<UrnId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let k = self.balls.len();
        let urn = if k == 0 || self.rng.random::<f64>() < self.p {
            self.next_urn += 1;
            self.next_urn - 1
        } else {
            self.balls[self.rng.random_range(0..k)]
        };
        self.balls.push(urn);
        Some(urn)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Retoss {
    /// Every ball after the first, with probability `q`.
    Every { q: f64 },
    /// Only balls whose draw hit an empty urn, with probability `q`.
    EmptyOnly { q: f64 },
}

/// Zipf placement followed by a Simon-style re-toss (modifications 1 and 2).
///
/// A re-tossed ball picks a previous ball uniformly and adopts its final urn;
/// placements are never revised afterwards.
#[derive(Debug, Clone)]
pub struct RetossStream {
    law: ZipfLaw,
    rule: Retoss,
    zipf_rng: SimRng,
    aux_rng: SimRng,
    balls: Vec<UrnId>,
    occupied: UrnCounts,
    remaining: u64,
}

impl RetossStream {
    fn new(law: ZipfLaw, rule: Retoss, seed: u64, balls: u64) -> Self {
        Self {
            law,
            rule,
            zipf_rng: rng_for(seed, Stream::Placement),
            aux_rng: rng_for(seed, Stream::Auxiliary),
            balls: Vec::with_capacity(balls.min(1 << 26) as usize),
            occupied: UrnCounts::default(),
            remaining: balls,
        }
    }

    pub fn mod1(law: ZipfLaw, p: f64, seed: u64, balls: u64) -> Self {
        Self::new(law, Retoss::Every { q: 1.0 - p }, seed, balls)
    }

    pub fn mod2(law: ZipfLaw, p: f64, always_retoss: bool, seed: u64, balls: u64) -> Self {
        let q = if always_retoss { 1.0 } else { 1.0 - p };
        Self::new(law, Retoss::EmptyOnly { q }, seed, balls)
    }
}

impl Iterator for RetossStream {
    type Item = UrnId;

    fn next(&mut self) -> Option<UrnId> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let drawn = self.law.sample(&mut self.zipf_rng);
        let k = self.balls.len();
        let retoss = k > 0
            && match self.rule {
                Retoss::Every { q } => self.aux_rng.random::<f64>() < q,
                Retoss::EmptyOnly { q } => {
                    self.occupied.get(drawn) == 0 && self.aux_rng.random::<f64>() < q
                }
            };
        let urn = if retoss {
            self.balls[self.aux_rng.random_range(0..k)]
        } else {
            drawn
        };
        if matches!(self.rule, Retoss::EmptyOnly { .. }) {
            self.occupied.increment(urn);
        }
        self.balls.push(urn);
        Some(urn)
    }
}

/// Runs any model with its parameters validated strictly (`p ∈ (0, 1)`).
pub fn run(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    config.validate()?;
    run_validated(config, opts)
}

/// Like [`run`] but admits `p = 1` for the re-toss models, where re-tossing is disabled.
/// Used to check that they degenerate to the elementary model.
#[doc(hidden)]
pub fn run_boundary(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    config.check(true)?;
    run_validated(config, opts)
}

fn run_validated(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    let ModelConfig { model, n, seed } = *config;
    let mut traj = match model {
        Model::Elementary { theta } => {
            let law = ZipfLaw::new(theta)?;
            record_checkpoints(ElementaryStream::new(law, seed, n), &opts.schedule(n), opts.kmax)?
        }
        Model::Poissonized { theta } => {
            let law = ZipfLaw::new(theta)?;
            let mut aux = rng_for(seed, Stream::Auxiliary);
            let balls = poisson_sample(n as f64, &mut aux)?;
            record_checkpoints(
                ElementaryStream::new(law, seed, balls),
                &opts.schedule(balls),
                opts.kmax,
            )?
        }
        Model::Simon { p } => {
            record_checkpoints(SimonStream::new(p, seed, n), &opts.schedule(n), opts.kmax)?
        }
        Model::Mod1 { beta, p } => {
            let law = ZipfLaw::new(beta)?;
            record_checkpoints(RetossStream::mod1(law, p, seed, n), &opts.schedule(n), opts.kmax)?
        }
        Model::Mod2 { beta, p, always_retoss } => {
            let law = ZipfLaw::new(beta)?;
            record_checkpoints(
                RetossStream::mod2(law, p, always_retoss, seed, n),
                &opts.schedule(n),
                opts.kmax,
            )?
        }
    };
    traj.model = Some(*config);
    Ok(traj)
}

fn expect_kind(config: &ModelConfig, kind: &'static str) -> Result<()> {
    if config.model.name() == kind {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "expected a {kind} configuration, got {}",
            config.model.name()
        )))
    }
}

pub fn run_elementary(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    expect_kind(config, "elementary")?;
    run(config, opts)
}

pub fn run_poissonized(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    expect_kind(config, "poissonized")?;
    run(config, opts)
}

pub fn run_simon(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    expect_kind(config, "simon")?;
    run(config, opts)
}

pub fn run_mod1(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    expect_kind(config, "mod1")?;
    run(config, opts)
}

pub fn run_mod2(config: &ModelConfig, opts: &RunOptions) -> Result<Trajectory> {
    expect_kind(config, "mod2")?;
    run(config, opts)
}
