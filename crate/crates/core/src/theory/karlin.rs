use crate::distributions::{gamma, ZipfLaw};
use crate::error::{check_open_unit, Error, Result};

use super::factorial;

/// `α(x) = max{j : p_j ≥ 1/x}`, which is `⌊(Cx)^θ⌋` for the pure Zipf law.
///
/// The comparison `x p_j ≥ 1` is made with a relative slack of a few ulps so
/// that `α(1/p_j) ≥ j` survives rounding in `1/p_j`.
pub fn alpha(law: &ZipfLaw, x: f64) -> Result<u64> {
    if !(x >= 1.0) || !x.is_finite() {
        return Err(Error::Domain {
            name: "x",
            value: x,
            expected: "finite real >= 1",
        });
    }
    let qualifies = |j: u64| j >= 1 && x * law.pmf(j) >= 1.0 - 4.0 * f64::EPSILON;
    let mut j = (law.normalizer() * x).powf(law.theta()).floor() as u64;
    while qualifies(j + 1) {
        j += 1;
    }
    while j > 0 && !qualifies(j) {
        j -= 1;
    }
    Ok(j)
}

/// `Γ(1-θ)(2^θ - 1)`, the variance coefficient of `R_n / (n^θ L(n))`.
pub fn karlin_variance_coefficient(theta: f64) -> Result<f64> {
    check_open_unit("theta", theta)?;
    Ok(gamma(1.0 - theta)? * (theta.exp2() - 1.0))
}

/// `B_n = Γ(1-θ)(2^θ - 1) n^θ L(n)` with `L ≡ C^θ`.
pub fn karlin_variance(law: &ZipfLaw, n: f64) -> Result<f64> {
    if !(n >= 1.0) {
        return Err(Error::Domain {
            name: "n",
            value: n,
            expected: "real >= 1",
        });
    }
    let theta = law.theta();
    Ok(karlin_variance_coefficient(theta)? * (law.normalizer() * n).powf(theta))
}

/// Limiting covariance `c_{r_i, r_j}` of `R_{n,r} / α(n)^(1/2)`.
pub fn karlin_covariance(theta: f64, ri: u32, rj: u32) -> Result<f64> {
    check_open_unit("theta", theta)?;
    if ri == 0 || rj == 0 {
        return Err(Error::Domain {
            name: "r",
            value: 0.0,
            expected: "positive integer",
        });
    }
    if ri != rj {
        let (a, b) = (f64::from(ri), f64::from(rj));
        Ok(-theta * gamma(a + b - theta)? / (factorial(ri) * factorial(rj))
            * (theta - a - b).exp2())
    } else {
        let r = f64::from(ri);
        let inner = gamma(r - theta)? - (theta - 2.0 * r).exp2() * gamma(2.0 * r - theta)? / gamma(r + 1.0)?;
        Ok(theta / gamma(r + 1.0)? * inner)
    }
}

/// `K_{k,θ} = θ Γ(k - θ)` for `k > 0` and `-Γ(1 - θ)` for `k = 0`.
pub fn k_coefficient(k: u32, theta: f64) -> Result<f64> {
    check_open_unit("theta", theta)?;
    if k == 0 {
        Ok(-gamma(1.0 - theta)?)
    } else {
        Ok(theta * gamma(f64::from(k) - theta)?)
    }
}

/// Covariance function `c*_{ij}(τ, t)` of the limiting Gaussian process of
/// the scaled `R*_{[nt], k}` paths.
///
/// The closed form is stated for `τ ≤ t`; for `τ > t` the value is
/// `c*_{ji}(t, τ)`. Powers use `0^0 = 1`.
pub fn fclt_covariance(theta: f64, i: u32, j: u32, tau: f64, t: f64) -> Result<f64> {
    check_open_unit("theta", theta)?;
    if i == 0 || j == 0 {
        return Err(Error::Domain {
            name: "i, j",
            value: 0.0,
            expected: "positive integers",
        });
    }
    for (name, v) in [("tau", tau), ("t", t)] {
        if !(v > 0.0 && v <= 1.0) {
            return Err(Error::Domain {
                name,
                value: v,
                expected: "half-open interval (0, 1]",
            });
        }
    }
    if tau > t {
        return fclt_covariance(theta, j, i, t, tau);
    }
    let k: Vec<f64> = (0..i + j)
        .map(|m| k_coefficient(m, theta))
        .collect::<Result<_>>()?;
    let fact: Vec<f64> = (0..i + j).map(factorial).collect();

    let mut cross = 0.0;
    for s in 0..i {
        for m in 0..j {
            let e = f64::from(m + s);
            cross += tau.powi(s as i32) * t.powi(m as i32) * k[(m + s) as usize]
                / ((t + tau).powf(e - theta) * fact[s as usize] * fact[m as usize]);
        }
    }
    let first = if i < j {
        let mut acc = 0.0;
        for s in 0..i {
            for m in 0..(j - s) {
                let e = f64::from(m + s);
                acc += tau.powi(s as i32) * (t - tau).powi(m as i32) * k[(m + s) as usize]
                    / (t.powf(e - theta) * fact[s as usize] * fact[m as usize]);
            }
        }
        acc
    } else {
        t.powf(theta) * (0..j).map(|m| k[m as usize] / fact[m as usize]).sum::<f64>()
    };
    Ok(first - cross)
}
