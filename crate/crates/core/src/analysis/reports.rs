//! Theory-vs-simulation comparison reports.
//!
//! Every row carries `z = (empirical − target)/se` with a replicate-based
//! standard error, and its own pass rule. Tolerances are fixed here and
//! listed in each report's `notes`.

use std::fmt::Write as _;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use super::estimators::estimate_theta;
use super::replicates::run_replicates;
use crate::distributions::{derive_seed, rng_for, Stream, ZipfLaw};
use crate::error::{Error, Result};
use crate::models::{Model, ModelConfig, RunOptions};
use crate::occupancy::{Checkpoint, Trajectory};
use crate::theory::{
    alpha, karlin_covariance, karlin_variance, occupancy_series, simon_limit_fraction, OccupancyEvent,
};

pub const MIN_VARIANCE_REPS: usize = 100;
pub const MIN_COVARIANCE_REPS: usize = 500;
const BOOTSTRAP_RESAMPLES: usize = 1000;

const MEAN_Z: f64 = 4.0;
const POISSON_VAR_REL: f64 = 0.15;
const KARLIN_VAR_REL: f64 = 0.25;
const SCALING_REL: f64 = 0.20;
const KURTOSIS_TOL: f64 = 0.5;
const SKEWNESS_TOL: f64 = 0.5;
const COV_DIAG_REL: f64 = 0.15;
const BOOTSTRAP_CONFIDENCE: f64 = 0.95;
const SIMON_RATE_ABS: f64 = 0.005;
const SIMON_SINGLETON_ABS: f64 = 0.01;
const SIMON_HIGHER_ABS: f64 = 0.005;
const FLUCTUATION_RATIO: (f64, f64) = (0.5, 2.0);
const DIVERGENCE_Z: f64 = 3.0;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub name: String,
    pub empirical: f64,
    pub target: Option<f64>,
    pub se: Option<f64>,
    pub z: Option<f64>,
    pub pass: bool,
}

impl ReportRow {
    fn new(name: impl Into<String>, empirical: f64, target: Option<f64>, se: Option<f64>, pass: bool) -> Self {
        let z = match (target, se) {
            (Some(t), Some(s)) if s > 0.0 => Some((empirical - t) / s),
            _ => None,
        };
        Self { name: name.into(), empirical, target, se, z, pass }
    }

    fn z_within(name: impl Into<String>, empirical: f64, target: f64, se: f64, zmax: f64) -> Self {
        let pass = (empirical - target).abs() <= zmax * se;
        Self::new(name, empirical, Some(target), Some(se), pass)
    }

    fn relative(name: impl Into<String>, empirical: f64, target: f64, se: f64, rel: f64) -> Self {
        let pass = (empirical - target).abs() <= rel * target.abs();
        Self::new(name, empirical, Some(target), Some(se), pass)
    }

    fn absolute(name: impl Into<String>, empirical: f64, target: f64, se: f64, tol: f64) -> Self {
        let pass = (empirical - target).abs() <= tol;
        Self::new(name, empirical, Some(target), Some(se), pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentReport {
    pub model: String,
    pub params: Value,
    pub reps: usize,
    pub seed: Option<u64>,
    pub rows: Vec<ReportRow>,
    pub notes: Vec<String>,
}

impl MomentReport {
    fn new(model: &str, params: Value, reps: usize) -> Self {
        Self {
            model: model.to_string(),
            params,
            reps,
            seed: None,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn row(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// `name,empirical,target,se,z,pass`; missing values are empty fields.
    pub fn to_csv(&self) -> String {
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        let mut out = String::from("name,empirical,target,se,z,pass\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "\"{}\",{},{},{},{},{}",
                r.name.replace('"', "\"\""),
                r.empirical,
                opt(r.target),
                opt(r.se),
                opt(r.z),
                r.pass
            );
        }
        out
    }
}

/// Replicate moments of one statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleStats {
    pub count: usize,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Standard error of the mean.
    pub se_mean: f64,
    /// Standard error of the sample variance, `sd((x − x̄)²)/√count`.
    pub se_variance: f64,
    pub skewness: f64,
    /// Non-excess kurtosis `m₄/m₂²` (3 for a normal sample).
    pub kurtosis: f64,
}

impl SampleStats {
    pub fn of(values: &[f64]) -> Self {
        let count = values.len();
        let nf = count as f64;
        let mean = values.iter().sum::<f64>() / nf;
        let (mut m2, mut m3, mut m4) = (0.0, 0.0, 0.0);
        for &x in values {
            let d = x - mean;
            m2 += d * d;
            m3 += d * d * d;
            m4 += d * d * d * d;
        }
        let (m2, m3, m4) = (m2 / nf, m3 / nf, m4 / nf);
        let variance = if count > 1 { m2 * nf / (nf - 1.0) } else { 0.0 };
        Self {
            count,
            mean,
            variance,
            se_mean: (variance / nf).sqrt(),
            se_variance: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
            skewness: m3 / m2.powf(1.5),
            kurtosis: m4 / (m2 * m2),
        }
    }
}

fn final_checkpoints(trajs: &[Trajectory]) -> Result<Vec<&Checkpoint>> {
    trajs
        .iter()
        .map(|t| t.last().ok_or_else(|| Error::Degenerate("trajectory without checkpoints".into())))
        .collect()
}

fn common_n(points: &[&Checkpoint]) -> Result<u64> {
    let n = points[0].n;
    if points.iter().any(|c| c.n != n) {
        return Err(Error::Config("trajectories end at different ball counts".into()));
    }
    Ok(n)
}

fn checkpoints_at(trajs: &[Trajectory], n: u64) -> Option<Vec<&Checkpoint>> {
    trajs.iter().map(|t| t.at(n)).collect()
}

fn model_params(trajs: &[Trajectory]) -> (String, Value) {
    match trajs.first().and_then(|t| t.model) {
        Some(cfg) => {
            let mut v = serde_json::to_value(cfg).expect("config serializes");
            if let Some(obj) = v.as_object_mut() {
                obj.remove("seed");
                obj.remove("kind");
            }
            (cfg.model.name().to_string(), v)
        }
        None => ("unknown".to_string(), json!({})),
    }
}

/// Var R_n against B_n (and, for the Poissonized model, against the exact
/// variance of `R_{Π(n)}`), plus normality indicators of standardized R_n.
///
/// For fixed-n trajectories that also hold a checkpoint at `⌊n/4⌋` a row
/// compares `Var R_n / Var R_{⌊n/4⌋}` with `4^θ`.
pub fn compare_variance(trajs: &[Trajectory], theta: f64) -> Result<MomentReport> {
    if trajs.len() < MIN_VARIANCE_REPS {
        return Err(Error::TooFewReplicates { required: MIN_VARIANCE_REPS, got: trajs.len() });
    }
    let law = ZipfLaw::new(theta)?;
    let finals = final_checkpoints(trajs)?;
    let poissonized = matches!(trajs[0].model.map(|c| c.model), Some(Model::Poissonized { .. }));
    let n = if poissonized {
        trajs[0].model.expect("checked above").n
    } else {
        common_n(&finals)?
    };
    let nf = n as f64;
    let r: Vec<f64> = finals.iter().map(|c| c.r as f64).collect();
    let stats = SampleStats::of(&r);
    if stats.variance == 0.0 {
        return Err(Error::Degenerate("R_n has zero variance across replicates".into()));
    }
    let (model, params) = model_params(trajs);
    let mut report = MomentReport::new(&model, params, trajs.len());

    let series = occupancy_series(&law, nf, OccupancyEvent::AtLeast(1))?;
    report.rows.push(ReportRow::z_within(
        "mean R_n vs poissonized series",
        stats.mean,
        series.mean,
        stats.se_mean,
        MEAN_Z,
    ));
    if poissonized {
        report.rows.push(ReportRow::relative(
            "var R_n vs poissonized series",
            stats.variance,
            series.variance,
            stats.se_variance,
            POISSON_VAR_REL,
        ));
    }
    let b_n = karlin_variance(&law, nf.max(1.0))?;
    report.rows.push(ReportRow::relative("var R_n vs B_n", stats.variance, b_n, stats.se_variance, KARLIN_VAR_REL));

    if !poissonized {
        if let Some(quarter) = checkpoints_at(trajs, n / 4).filter(|_| n >= 4) {
            let rq: Vec<f64> = quarter.iter().map(|c| c.r as f64).collect();
            let sq = SampleStats::of(&rq);
            let ratio = stats.variance / sq.variance;
            let target = 4f64.powf(theta);
            // Delta-method SE ignoring the correlation between the two variances.
            let se = ratio
                * ((stats.se_variance / stats.variance).powi(2) + (sq.se_variance / sq.variance).powi(2)).sqrt();
            report.rows.push(ReportRow::relative(
                format!("var ratio R_{n} / R_{}", n / 4),
                ratio,
                target,
                se,
                SCALING_REL,
            ));
        }
    }

    let nr = r.len() as f64;
    report.rows.push(ReportRow::absolute(
        "skewness of standardized R_n",
        stats.skewness,
        0.0,
        (6.0 / nr).sqrt(),
        SKEWNESS_TOL,
    ));
    report.rows.push(ReportRow::absolute(
        "kurtosis of standardized R_n",
        stats.kurtosis,
        3.0,
        (24.0 / nr).sqrt(),
        KURTOSIS_TOL,
    ));
    report.notes = vec![
        format!("n = {n}, theta = {theta}, L(x) = C^theta = {}", law.normalizer().powf(theta)),
        format!("mean: |z| <= {MEAN_Z}"),
        format!("poissonized variance: relative error <= {POISSON_VAR_REL}"),
        format!("B_n: relative error <= {KARLIN_VAR_REL}"),
        format!("variance ratio: relative error <= {SCALING_REL}"),
        format!("skewness within {SKEWNESS_TOL} of 0, kurtosis within {KURTOSIS_TOL} of 3"),
    ];
    Ok(report)
}

fn covariance(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let nf = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let prods: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).collect();
    let cov = prods.iter().sum::<f64>() / (nf - 1.0);
    let mean_prod = prods.iter().sum::<f64>() / nf;
    let sd = (prods.iter().map(|p| (p - mean_prod).powi(2)).sum::<f64>() / (nf - 1.0)).sqrt();
    (cov, sd / nf.sqrt())
}

/// Empirical covariance of `(R_{n,r} − mean)/α(n)^(1/2)` against `c_{r_i,r_j}`.
///
/// Centering uses the replicate mean. Diagonal entries pass within 15%;
/// off-diagonal entries must have the predicted sign, and each pair gets a
/// bootstrap row with the fraction of resamples on that side.
pub fn compare_covariance(trajs: &[Trajectory], theta: f64, r_list: &[usize]) -> Result<MomentReport> {
    if trajs.len() < MIN_COVARIANCE_REPS {
        return Err(Error::TooFewReplicates { required: MIN_COVARIANCE_REPS, got: trajs.len() });
    }
    let law = ZipfLaw::new(theta)?;
    let finals = final_checkpoints(trajs)?;
    let n = common_n(&finals)?;
    let kmax = trajs[0].kmax;
    if let Some(&bad) = r_list.iter().find(|&&r| r == 0 || r > kmax) {
        return Err(Error::Config(format!("r = {bad} outside 1..={kmax}")));
    }
    let scale = (alpha(&law, n as f64)? as f64).sqrt();
    if scale == 0.0 {
        return Err(Error::Degenerate(format!("alpha({n}) = 0")));
    }
    let columns: Vec<Vec<f64>> = r_list
        .iter()
        .map(|&r| finals.iter().map(|c| c.exactly(r) as f64 / scale).collect())
        .collect();
    let (model, params) = model_params(trajs);
    let mut report = MomentReport::new(&model, params, trajs.len());
    for (a, &ra) in r_list.iter().enumerate() {
        for (b, &rb) in r_list.iter().enumerate() {
            let (cov, se) = covariance(&columns[a], &columns[b]);
            let target = karlin_covariance(theta, ra as u32, rb as u32)?;
            let name = format!("cov(R_{{n,{ra}}},R_{{n,{rb}}})");
            let row = if a == b {
                ReportRow::relative(name, cov, target, se, COV_DIAG_REL)
            } else {
                let pass = cov.signum() == target.signum();
                ReportRow::new(name, cov, Some(target), Some(se), pass)
            };
            report.rows.push(row);
        }
    }
    let seed = trajs[0].model.map(|c| c.seed).unwrap_or(0);
    let mut rng = rng_for(derive_seed(seed, 0xB007), Stream::Auxiliary);
    let reps = finals.len();
    let resamples: Vec<Vec<usize>> = (0..BOOTSTRAP_RESAMPLES)
        .map(|_| (0..reps).map(|_| rng.random_range(0..reps)).collect())
        .collect();
    for (a, &ra) in r_list.iter().enumerate() {
        for (b, &rb) in r_list.iter().enumerate().skip(a + 1) {
            let target = karlin_covariance(theta, ra as u32, rb as u32)?;
            let agree = resamples
                .iter()
                .filter(|idx| {
                    let xs: Vec<f64> = idx.iter().map(|&i| columns[a][i]).collect();
                    let ys: Vec<f64> = idx.iter().map(|&i| columns[b][i]).collect();
                    covariance(&xs, &ys).0.signum() == target.signum()
                })
                .count();
            let frac = agree as f64 / BOOTSTRAP_RESAMPLES as f64;
            let side = if target < 0.0 { "< 0" } else { "> 0" };
            report.rows.push(ReportRow::new(
                format!("bootstrap P(cov(R_{{n,{ra}}},R_{{n,{rb}}}) {side})"),
                frac,
                Some(BOOTSTRAP_CONFIDENCE),
                None,
                frac >= BOOTSTRAP_CONFIDENCE,
            ));
        }
    }
    report.notes = vec![
        format!("n = {n}, alpha(n) = {}", scale * scale),
        format!("diagonal: relative error <= {COV_DIAG_REL}"),
        "off-diagonal: sign must match the limit".to_string(),
        format!("bootstrap: {BOOTSTRAP_RESAMPLES} resamples, sign confidence >= {BOOTSTRAP_CONFIDENCE}"),
    ];
    Ok(report)
}

/// Simon model: `R_n/n → p`, `R_{n,j}/n → simon_limit_fraction(p, j)`, and
/// the √n-scaled singleton fluctuations at `n/100, n/10, n`.
pub fn compare_simon_limits(trajs: &[Trajectory], p: f64, m: usize) -> Result<MomentReport> {
    if m < 2 {
        return Err(Error::Domain { name: "m", value: m as f64, expected: "integer >= 2" });
    }
    if trajs.len() < 2 {
        return Err(Error::TooFewReplicates { required: 2, got: trajs.len() });
    }
    let kmax = trajs[0].kmax;
    if m - 1 > kmax {
        return Err(Error::Config(format!("m - 1 = {} exceeds kmax = {kmax}", m - 1)));
    }
    let finals = final_checkpoints(trajs)?;
    let n = common_n(&finals)?;
    let nf = n as f64;
    let (model, params) = model_params(trajs);
    let mut report = MomentReport::new(&model, params, trajs.len());

    let rate: Vec<f64> = finals.iter().map(|c| c.r as f64 / nf).collect();
    let s = SampleStats::of(&rate);
    report.rows.push(ReportRow::absolute("R_n/n", s.mean, p, s.se_mean, SIMON_RATE_ABS));
    for j in 1..m {
        let frac: Vec<f64> = finals.iter().map(|c| c.exactly(j) as f64 / nf).collect();
        let s = SampleStats::of(&frac);
        let tol = if j == 1 { SIMON_SINGLETON_ABS } else { SIMON_HIGHER_ABS };
        let target = simon_limit_fraction(p, j as u64)?;
        report.rows.push(ReportRow::absolute(format!("R_{{n,{j}}}/n"), s.mean, target, s.se_mean, tol));
    }

    let f1 = simon_limit_fraction(p, 1)?;
    let fluctuation = |at: u64| -> Option<f64> {
        let cps = checkpoints_at(trajs, at)?;
        let sq = cps
            .iter()
            .map(|c| {
                let d = (c.exactly(1) as f64 - at as f64 * f1) / (at as f64).sqrt();
                d * d
            })
            .sum::<f64>();
        Some(sq / cps.len() as f64)
    };
    let mut variances = Vec::new();
    for at in [n / 100, n / 10, n] {
        if at == 0 {
            continue;
        }
        if let Some(v) = fluctuation(at) {
            report.rows.push(ReportRow::new(
                format!("fluctuation variance at n={at}"),
                v,
                None,
                None,
                v.is_finite() && v > 0.0,
            ));
            variances.push((at, v));
        }
    }
    if let (Some(&(a, va)), Some(&(b, vb))) = (variances.iter().rev().nth(1), variances.last()) {
        let ratio = va / vb;
        report.rows.push(ReportRow::new(
            format!("fluctuation variance ratio n={a} vs n={b}"),
            ratio,
            Some(1.0),
            None,
            ratio >= FLUCTUATION_RATIO.0 && ratio <= FLUCTUATION_RATIO.1,
        ));
    }
    report.notes = vec![
        format!("R_n/n within {SIMON_RATE_ABS}; R_{{n,1}}/n within {SIMON_SINGLETON_ABS}; R_{{n,j}}/n, j >= 2, within {SIMON_HIGHER_ABS}"),
        "fluctuations: mean square of n^(-1/2)(R_{n,1} - n f_1) across replicates".to_string(),
        format!("fluctuation variance ratio within [{}, {}]", FLUCTUATION_RATIO.0, FLUCTUATION_RATIO.1),
    ];
    Ok(report)
}

fn estimator_samples(trajs: &[Trajectory]) -> Result<(SampleStats, SampleStats)> {
    let mut hat = Vec::with_capacity(trajs.len());
    let mut star = Vec::with_capacity(trajs.len());
    for t in trajs {
        let e = estimate_theta(t)?;
        hat.push(e.theta_hat);
        star.push(e.theta_star);
    }
    Ok((SampleStats::of(&hat), SampleStats::of(&star)))
}

fn push_estimator_rows(report: &mut MomentReport, label: &str, trajs: &[Trajectory], expect_split: bool) -> Result<()> {
    let (hat, star) = estimator_samples(trajs)?;
    report.rows.push(ReportRow::new(format!("{label}: mean theta_hat"), hat.mean, None, Some(hat.se_mean), true));
    report.rows.push(ReportRow::new(format!("{label}: mean theta_star"), star.mean, None, Some(star.se_mean), true));
    let diff = hat.mean - star.mean;
    let se = (hat.se_mean.powi(2) + star.se_mean.powi(2)).sqrt();
    let z = diff / se;
    let pass = if expect_split { z.abs() > DIVERGENCE_Z } else { z.abs() < DIVERGENCE_Z };
    report.rows.push(ReportRow::new(format!("{label}: theta_hat - theta_star"), diff, Some(0.0), Some(se), pass));
    Ok(())
}

/// Mean `θ̂` and `θ*` for a re-toss model and for the elementary model at
/// `θ = β`, each with the difference and its z-score against the combined SE.
///
/// The modification passes when `|z| > 3`; the control passes when `|z| < 3`.
pub fn divergence_report(config: &ModelConfig, reps: usize, master_seed: u64, opts: &RunOptions) -> Result<MomentReport> {
    let beta = match config.model {
        Model::Mod1 { beta, .. } | Model::Mod2 { beta, .. } => beta,
        _ => return Err(Error::Config("divergence report needs a mod1 or mod2 configuration".into())),
    };
    if reps < 2 {
        return Err(Error::TooFewReplicates { required: 2, got: reps });
    }
    let modified = run_replicates(config, reps, master_seed, opts)?;
    let control_cfg = ModelConfig::new(Model::Elementary { theta: beta }, config.n, 0);
    let control = run_replicates(&control_cfg, reps, master_seed, opts)?;
    let (model, params) = model_params(&modified);
    let mut report = MomentReport::new(&model, params, reps).with_seed(master_seed);
    push_estimator_rows(&mut report, model.as_str(), &modified, true)?;
    push_estimator_rows(&mut report, "elementary control", &control, false)?;
    report.notes = vec![
        "theta_hat = log2 R_n - log2 R_[n/2]; theta_star = R_{n,1}/R_n".to_string(),
        format!("modified model: |z| > {DIVERGENCE_Z}; elementary control at theta = beta: |z| < {DIVERGENCE_Z}"),
        "se = sqrt(se(theta_hat)^2 + se(theta_star)^2)".to_string(),
    ];
    Ok(report)
}
