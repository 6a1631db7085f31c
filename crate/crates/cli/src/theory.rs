use clap::{Args, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use urnlab::distributions::ZipfLaw;
use urnlab::theory::{
    fclt_covariance, janson_embedding, karlin_covariance, karlin_variance, karlin_variance_coefficient,
    poissonized_moments, simon_limit_fraction, simon_limit_tail, yule_simon_pmf,
};

use crate::args::flag_error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Quantity {
    YulePmf,
    SimonLimits,
    KarlinVar,
    KarlinCov,
    FcltCov,
    PoissonMoments,
    Janson,
}

#[derive(Debug, Args)]
pub struct TheoryArgs {
    #[arg(long, value_enum)]
    pub quantity: Quantity,
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub n: Option<f64>,
    #[arg(long)]
    pub i: Option<u32>,
    #[arg(long)]
    pub j: Option<u32>,
    #[arg(long)]
    pub ri: Option<u32>,
    #[arg(long)]
    pub rj: Option<u32>,
    #[arg(long)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Largest count index reported by `simon-limits` and `poisson-moments`.
    #[arg(long, default_value_t = 10)]
    pub kmax: usize,
}

#[derive(Debug, Serialize)]
pub struct TheoryOutput {
    pub quantity: &'static str,
    pub params: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Value>,
    pub truncation_bound: Option<f64>,
}

fn need<T: Copy>(flag: &str, v: Option<T>) -> Result<T, String> {
    v.ok_or_else(|| format!("--{flag} is required for this quantity"))
}

pub fn evaluate(args: &TheoryArgs) -> Result<TheoryOutput, String> {
    let e = flag_error;
    let out = |quantity, params, value: Option<Value>, values: Option<Value>, bound| TheoryOutput {
        quantity,
        params,
        value,
        values,
        truncation_bound: bound,
    };
    Ok(match args.quantity {
        Quantity::YulePmf => {
            let (p, i) = (need("p", args.p)?, need("i", args.i)?);
            let f = yule_simon_pmf(p, u64::from(i)).map_err(e)?;
            out("yule-pmf", json!({"p": p, "i": i}), Some(json!(f)), None, None)
        }
        Quantity::SimonLimits => {
            let p = need("p", args.p)?;
            let fractions: Vec<f64> =
                (1..=args.kmax as u64).map(|j| simon_limit_fraction(p, j)).collect::<Result<_, _>>().map_err(e)?;
            let tail = simon_limit_tail(p, args.kmax as u64).map_err(e)?;
            let values = json!({"distinct_rate": p, "fractions": fractions, "tail_beyond_kmax": tail});
            out("simon-limits", json!({"p": p, "kmax": args.kmax}), None, Some(values), None)
        }
        Quantity::KarlinVar => {
            let (theta, n) = (need("theta", args.theta)?, need("n", args.n)?);
            let law = ZipfLaw::new(theta).map_err(e)?;
            let b = karlin_variance(&law, n).map_err(e)?;
            let values = json!({"b_n": b, "coefficient": karlin_variance_coefficient(theta).map_err(e)?});
            out("karlin-var", json!({"theta": theta, "n": n}), Some(json!(b)), Some(values), None)
        }
        Quantity::KarlinCov => {
            let (theta, ri, rj) = (need("theta", args.theta)?, need("ri", args.ri)?, need("rj", args.rj)?);
            let c = karlin_covariance(theta, ri, rj).map_err(e)?;
            out("karlin-cov", json!({"theta": theta, "ri": ri, "rj": rj}), Some(json!(c)), None, None)
        }
        Quantity::FcltCov => {
            let theta = need("theta", args.theta)?;
            let (i, j) = (need("i", args.i)?, need("j", args.j)?);
            let (tau, t) = (need("tau", args.tau)?, need("t", args.t)?);
            let c = fclt_covariance(theta, i, j, tau, t).map_err(e)?;
            let params = json!({"theta": theta, "i": i, "j": j, "tau": tau, "t": t});
            out("fclt-cov", params, Some(json!(c)), None, None)
        }
        Quantity::PoissonMoments => {
            let (theta, n) = (need("theta", args.theta)?, need("n", args.n)?);
            let law = ZipfLaw::new(theta).map_err(e)?;
            let m = poissonized_moments(&law, n, args.kmax).map_err(e)?;
            let values = json!({"means": m.means, "variances": m.variances});
            let params = json!({"theta": theta, "n": n, "kmax": args.kmax});
            out("poisson-moments", params, None, Some(values), Some(m.truncation_bound))
        }
        Quantity::Janson => {
            let (m, p) = (need("m", args.m)?, need("p", args.p)?);
            let rep = janson_embedding(m, p).map_err(e)?;
            let eig: Vec<f64> = rep.eigenvalues.iter().map(|&(re, _)| re).collect();
            let values = json!({
                "eigenvalues": eig,
                "eigenvalues_complex": rep.eigenvalues,
                "lambda1": rep.lambda1,
                "lambda2": rep.lambda2,
                "matrix": rep.matrix,
                "weights": rep.weights,
                "condition_holds": rep.condition_holds,
            });
            out("janson", json!({"m": m, "p": p}), None, Some(values), None)
        }
    })
}

pub fn run(args: &TheoryArgs) -> Result<bool, String> {
    let output = evaluate(args)?;
    crate::emit(&serde_json::to_string_pretty(&output).expect("output serializes"));
    Ok(true)
}
