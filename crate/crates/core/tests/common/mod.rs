#![allow(dead_code)]

use std::collections::BTreeMap;

/// `P(Poisson(x) = m)`.
pub fn poisson_pmf(x: f64, m: u32) -> f64 {
    let mut p = (-x).exp();
    for r in 1..=m {
        p *= x / f64::from(r);
    }
    p
}

/// `P(Poisson(x) >= k)` by direct summation of the upper tail.
pub fn poisson_at_least(x: f64, k: u32) -> f64 {
    if k == 0 {
        return 1.0;
    }
    if x > f64::from(k) + 10.0 {
        return 1.0 - (0..k).map(|m| poisson_pmf(x, m)).sum::<f64>();
    }
    let mut term = poisson_pmf(x, k);
    let mut sum = 0.0;
    let mut m = k;
    while term > 1e-20 * sum || sum == 0.0 {
        sum += term;
        m += 1;
        term *= x / f64::from(m);
        if term == 0.0 {
            break;
        }
    }
    sum
}

/// `θ ∫₀^∞ g(y) y^(-θ-1) dy` by the trapezoid rule in `u = ln y`, which is
/// spectrally accurate for integrands decaying at both ends.
///
/// `g` must be `O(y)` near 0 and negligible beyond `y_max`.
pub fn regular_variation_integral(theta: f64, y_max: f64, g: impl Fn(f64) -> f64) -> f64 {
    let lo = -32.0 / (1.0 - theta);
    let hi = y_max.ln();
    let steps = ((hi - lo) / 0.01).ceil() as usize;
    let h = (hi - lo) / steps as f64;
    let mut acc = 0.0;
    for s in 0..=steps {
        let u = lo + h * s as f64;
        let y = u.exp();
        let w = if s == 0 || s == steps { 0.5 } else { 1.0 };
        acc += w * g(y) * (-theta * u).exp();
    }
    theta * acc * h
}

/// Limit covariance of the at-least-`i` count at time `tau` and the
/// at-least-`j` count at time `t`, from the Poissonized urn picture: one urn
/// of intensity `y` holds `Π(τy)` balls at `τ` and `Π(τy) + Π((t-τ)y)` at `t`.
pub fn fclt_oracle(theta: f64, i: u32, j: u32, tau: f64, t: f64) -> f64 {
    let (i, j, tau, t) = if tau <= t { (i, j, tau, t) } else { (j, i, t, tau) };
    regular_variation_integral(theta, 80.0 / tau, |y| {
        let a = tau * y;
        let b = (t - tau) * y;
        // P(A >= i, A + B >= j) = Σ_{m >= i} P(A = m) P(B >= j - m)
        let mut joint = 0.0;
        let top = i.max(j) + 200;
        let mut pa = poisson_pmf(a, i);
        for m in i..top {
            let pb = if m >= j { 1.0 } else { poisson_at_least(b, j - m) };
            joint += pa * pb;
            if m > j && f64::from(m) > a && pa < 1e-22 {
                break;
            }
            pa *= a / f64::from(m + 1);
        }
        joint - poisson_at_least(a, i) * poisson_at_least(t * y, j)
    })
}

/// Limit covariance of exact-`r` counts scaled by `α(n)^(1/2)`.
pub fn karlin_cov_oracle(theta: f64, ri: u32, rj: u32) -> f64 {
    regular_variation_integral(theta, 80.0, |y| {
        let pi = poisson_pmf(y, ri);
        let pj = poisson_pmf(y, rj);
        let both = if ri == rj { pi } else { 0.0 };
        both - pi * pj
    })
}

/// Exhaustive enumeration of Simon's process for `n` balls: every path of
/// choices (new urn, or copy one of the earlier balls) with its probability.
/// Returns the law of the sorted urn-size vector.
pub fn simon_shapes(p: f64, n: usize) -> BTreeMap<Vec<u64>, f64> {
    fn walk(p: f64, n: usize, urn_of: &mut Vec<usize>, sizes: &mut Vec<u64>, prob: f64, out: &mut BTreeMap<Vec<u64>, f64>) {
        let k = urn_of.len();
        if k == n {
            let mut shape = sizes.clone();
            shape.sort_unstable_by(|a, b| b.cmp(a));
            *out.entry(shape).or_insert(0.0) += prob;
            return;
        }
        sizes.push(1);
        urn_of.push(sizes.len() - 1);
        walk(p, n, urn_of, sizes, prob * p, out);
        urn_of.pop();
        sizes.pop();
        for b in 0..k {
            let u = urn_of[b];
            sizes[u] += 1;
            urn_of.push(u);
            walk(p, n, urn_of, sizes, prob * (1.0 - p) / k as f64, out);
            urn_of.pop();
            sizes[u] -= 1;
        }
    }
    let mut out = BTreeMap::new();
    if n == 0 {
        out.insert(Vec::new(), 1.0);
        return out;
    }
    // The first ball always opens an urn.
    walk(p, n, &mut vec![0], &mut vec![1], 1.0, &mut out);
    out
}

pub fn total_variation<K: Ord + Clone>(a: &BTreeMap<K, f64>, b: &BTreeMap<K, f64>) -> f64 {
    let mut keys: Vec<K> = a.keys().chain(b.keys()).cloned().collect();
    keys.sort();
    keys.dedup();
    0.5 * keys
        .iter()
        .map(|k| (a.get(k).copied().unwrap_or(0.0) - b.get(k).copied().unwrap_or(0.0)).abs())
        .sum::<f64>()
}
