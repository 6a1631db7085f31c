use crate::distributions::beta;
use crate::error::{check_open_unit, Error, Result};

fn positive(name: &'static str, i: u64) -> Result<()> {
    if i == 0 {
        Err(Error::Domain {
            name,
            value: 0.0,
            expected: "positive integer",
        })
    } else {
        Ok(())
    }
}

/// Yule–Simon mass `f(i) = ρ B(i, 1 + ρ)`, `ρ = 1/(1-p)`.
pub fn yule_simon_pmf(p: f64, i: u64) -> Result<f64> {
    check_open_unit("p", p)?;
    positive("i", i)?;
    let rho = 1.0 / (1.0 - p);
    Ok(rho * beta(i as f64, 1.0 + rho)?)
}

/// `Σ_{i > n} f(i) = n B(n, 1 + ρ)` (telescoping survival function); 1 for `n = 0`.
pub fn yule_simon_tail(p: f64, n: u64) -> Result<f64> {
    check_open_unit("p", p)?;
    if n == 0 {
        return Ok(1.0);
    }
    let rho = 1.0 / (1.0 - p);
    Ok(n as f64 * beta(n as f64, 1.0 + rho)?)
}

/// Almost-sure limit of `R_{n,j}/n` in Simon's model: `p/(1-p) · B(j, (2-p)/(1-p))`.
pub fn simon_limit_fraction(p: f64, j: u64) -> Result<f64> {
    check_open_unit("p", p)?;
    positive("j", j)?;
    Ok(p / (1.0 - p) * beta(j as f64, (2.0 - p) / (1.0 - p))?)
}

/// `Σ_{j > n}` of [`simon_limit_fraction`]; equals `p` times the Yule–Simon tail.
pub fn simon_limit_tail(p: f64, n: u64) -> Result<f64> {
    Ok(p * yule_simon_tail(p, n)?)
}
