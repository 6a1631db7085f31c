//! Exact moments of occupancy counts under Poissonization.
//!
//! With `N ~ Poisson(n)` balls the urn counts `X_j ~ Poisson(n p_j)` are
//! independent, so for any event `E_j` on a single urn,
//! `E Σ I(E_j) = Σ P(E_j)` and `Var Σ I(E_j) = Σ P(E_j)(1 - P(E_j))`.
//!
//! The series over `j` is summed directly while `x_j = n p_j > 1/2`. The rest
//! is expanded as a power series in `x_j`; swapping the sums turns every power
//! `x^r` into a Hurwitz zeta tail, which Euler–Maclaurin evaluates with a
//! remainder bound. The reported `bound` covers both truncations.

use serde::Serialize;

use crate::distributions::{ln_gamma, ZipfLaw};
use crate::distributions::scaled_hurwitz_tail;
use crate::error::{Error, Result};

/// Single-urn event whose indicator is summed over urns.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OccupancyEvent {
    /// At least `k` balls (`R*_{·,k}`).
    AtLeast(u32),
    /// Exactly `k` balls (`R_{·,k}`).
    Exactly(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesMoments {
    pub mean: f64,
    pub variance: f64,
    /// Absolute bound on the truncation error of either series.
    pub bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PoissonizedMoments {
    pub n: f64,
    pub kmax: usize,
    /// `E R*_{Π(n),k}` for `k = 1..=kmax`.
    pub means: Vec<f64>,
    /// `Var R*_{Π(n),k}` for `k = 1..=kmax`.
    pub variances: Vec<f64>,
    /// Largest truncation bound over all reported values.
    pub truncation_bound: f64,
}

const SERIES_TERMS: usize = 64;

impl OccupancyEvent {
    fn k(self) -> u32 {
        match self {
            Self::AtLeast(k) | Self::Exactly(k) => k,
        }
    }

    /// `(P(E), 1 - P(E))` for `X ~ Poisson(x)`, each without cancellation.
    fn probabilities(self, x: f64) -> (f64, f64) {
        let k = self.k();
        if x == 0.0 {
            return if k == 0 { (1.0, 0.0) } else { (0.0, 1.0) };
        }
        let ln_term = |m: u32| -x + f64::from(m) * x.ln() - ln_gamma_int(m);
        match self {
            Self::Exactly(_) => {
                let p = ln_term(k).exp();
                (p, 1.0 - p)
            }
            Self::AtLeast(_) if x < f64::from(k) => {
                // Upper tail directly; terms decrease from m = k on.
                let mut term = ln_term(k).exp();
                let mut sum = 0.0;
                let mut m = k;
                while term > 1e-18 * sum || sum == 0.0 {
                    sum += term;
                    m += 1;
                    term *= x / f64::from(m);
                    if term == 0.0 {
                        break;
                    }
                }
                (sum, 1.0 - sum)
            }
            Self::AtLeast(_) => {
                let below: f64 = (0..k).map(|m| ln_term(m).exp()).sum();
                (1.0 - below, below)
            }
        }
    }

    /// Power-series coefficients `a_r`, `r = 0..SERIES_TERMS`, of `P(E)` in `x`.
    fn coefficients(self) -> Vec<f64> {
        let k = self.k() as usize;
        (0..SERIES_TERMS)
            .map(|r| {
                if r < k || r == 0 {
                    return 0.0;
                }
                let sign = if (r - k).is_multiple_of(2) { 1.0 } else { -1.0 };
                let ln_mag = match self {
                    // (-1)^{r-k} C(r-1, k-1) / r!
                    Self::AtLeast(_) => {
                        ln_gamma_int(r as u32 - 1) - ln_gamma_int(k as u32 - 1) - ln_gamma_int((r - k) as u32)
                            - ln_gamma_int(r as u32)
                    }
                    // (-1)^{r-k} / (k! (r-k)!)
                    Self::Exactly(_) => -ln_gamma_int(k as u32) - ln_gamma_int((r - k) as u32),
                };
                sign * ln_mag.exp()
            })
            .collect()
    }
}

// ln m!
fn ln_gamma_int(m: u32) -> f64 {
    ln_gamma(f64::from(m) + 1.0).expect("positive argument")
}

/// Mean and variance of `Σ_j I(E_j)` with `X_j ~ Poisson(n p_j)` independent.
pub fn occupancy_series(law: &ZipfLaw, n: f64, event: OccupancyEvent) -> Result<SeriesMoments> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::Domain {
            name: "n",
            value: n,
            expected: "nonnegative finite real",
        });
    }
    if event.k() == 0 {
        return Err(Error::Domain {
            name: "k",
            value: 0.0,
            expected: "positive integer",
        });
    }
    if n == 0.0 {
        return Ok(SeriesMoments { mean: 0.0, variance: 0.0, bound: 0.0 });
    }
    let s = law.exponent();
    let scale = n * law.normalizer();
    // First index with x_j <= 1/2.
    let mut split = (2.0 * scale).powf(law.theta()).ceil().max(1.0) as u64;
    while split > 1 && scale * ((split - 1) as f64).powf(-s) <= 0.5 {
        split -= 1;
    }
    while scale * (split as f64).powf(-s) > 0.5 {
        split += 1;
    }

    let mut mean = Neumaier::default();
    let mut var = Neumaier::default();
    for j in 1..split {
        let (p, q) = event.probabilities(scale * (j as f64).powf(-s));
        mean.add(p);
        var.add(p * q);
    }

    // Tail: Σ_{j ≥ split} g(x_j) = Σ_r c_r y^r Σ_{j ≥ split} (split/j)^{rs}, y = x_split.
    let a = event.coefficients();
    let mut v = a.clone();
    for r in 0..SERIES_TERMS {
        for u in 1..r {
            v[r] -= a[u] * a[r - u];
        }
    }
    let y = scale * (split as f64).powf(-s);
    let mut bound = 0.0;
    let mut y_pow = 1.0;
    for r in 1..SERIES_TERMS {
        y_pow *= y;
        if a[r] == 0.0 && v[r] == 0.0 {
            continue;
        }
        let h = scaled_hurwitz_tail(r as f64 * s, split);
        mean.add(a[r] * y_pow * h.value);
        var.add(v[r] * y_pow * h.value);
        bound += (a[r].abs() + v[r].abs()) * y_pow * h.bound;
    }
    // Dropped powers r ≥ SERIES_TERMS: |a_r|, |v_r| ≤ (2^r + 4^r)/r!, y ≤ 1/2, and
    // Σ_{j ≥ split} (split/j)^{rs} ≤ 1 + split/(rs - 1).
    let r = SERIES_TERMS as f64;
    let dropped = (2f64.powf(r) + 4f64.powf(r)) * y.powf(r) / ln_gamma(r + 1.0)?.exp()
        * (1.0 + split as f64 / (r * s - 1.0))
        * 2.0;
    bound += dropped;

    Ok(SeriesMoments {
        mean: mean.total(),
        variance: var.total(),
        bound,
    })
}

/// `E` and `Var` of `R*_{Π(n),k}` for `k = 1..=kmax`.
pub fn poissonized_moments(law: &ZipfLaw, n: f64, kmax: usize) -> Result<PoissonizedMoments> {
    let mut means = Vec::with_capacity(kmax);
    let mut variances = Vec::with_capacity(kmax);
    let mut truncation_bound: f64 = 0.0;
    for k in 1..=kmax as u32 {
        let m = occupancy_series(law, n, OccupancyEvent::AtLeast(k))?;
        means.push(m.mean);
        variances.push(m.variance);
        truncation_bound = truncation_bound.max(m.bound);
    }
    Ok(PoissonizedMoments { n, kmax, means, variances, truncation_bound })
}

/// Compensated summation.
#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn total(&self) -> f64 {
        self.sum + self.comp
    }
}
