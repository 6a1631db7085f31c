//! Simon's model as a generalized Pólya urn.
//!
//! Types `1..m-1` are Simon urns holding exactly `i` balls, drawn with
//! activity `a_i = i`; type `m` pools every ball of the larger urns, each with
//! activity 1. Drawing a type-`i` element adds a fresh singleton with
//! probability `p` and otherwise grows the drawn urn. The mean replacement
//! matrix is `A = (a_j E ξ_{j,i})`; column `j` is `a_j E ξ_j`.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{check_open_unit, Error, Result};

/// Two-point law of one increment vector: `(probability, vector)` outcomes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IncrementLaw {
    pub drawn_type: usize,
    pub outcomes: Vec<(f64, Vec<i64>)>,
}

impl IncrementLaw {
    pub fn mean(&self) -> Vec<f64> {
        let m = self.outcomes[0].1.len();
        let mut out = vec![0.0; m];
        for (prob, v) in &self.outcomes {
            for (o, &x) in out.iter_mut().zip(v) {
                *o += prob * x as f64;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JansonReport {
    pub m: usize,
    pub p: f64,
    pub weights: Vec<f64>,
    pub increments: Vec<IncrementLaw>,
    /// Row-major `m × m` matrix `A`.
    pub matrix: Vec<Vec<f64>>,
    /// `(re, im)` pairs sorted by decreasing real part.
    pub eigenvalues: Vec<(f64, f64)>,
    pub lambda1: f64,
    pub lambda2: f64,
    /// Janson's condition `λ₂ < λ₁/2`.
    pub condition_holds: bool,
}

fn unit(m: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; m];
    v[i] = 1;
    v
}

pub fn janson_embedding(m: usize, p: f64) -> Result<JansonReport> {
    check_open_unit("p", p)?;
    if m < 2 {
        return Err(Error::Domain {
            name: "m",
            value: m as f64,
            expected: "integer >= 2",
        });
    }
    let q = 1.0 - p;
    // 0-based: index i is type i+1.
    let weights: Vec<f64> = (0..m).map(|i| if i + 1 < m { (i + 1) as f64 } else { 1.0 }).collect();
    let increments: Vec<IncrementLaw> = (0..m)
        .map(|i| {
            let grow = if i + 2 < m {
                let mut v = unit(m, i + 1);
                v[i] -= 1;
                v
            } else if i + 2 == m {
                let mut v = vec![0; m];
                v[m - 1] = m as i64;
                v[m - 2] -= 1;
                v
            } else {
                unit(m, m - 1)
            };
            IncrementLaw {
                drawn_type: i + 1,
                outcomes: vec![(p, unit(m, 0)), (q, grow)],
            }
        })
        .collect();

    let mut a = DMatrix::<f64>::zeros(m, m);
    for (j, law) in increments.iter().enumerate() {
        for (i, e) in law.mean().into_iter().enumerate() {
            a[(i, j)] = weights[j] * e;
        }
    }
    let mut eigenvalues: Vec<(f64, f64)> = a
        .clone()
        .complex_eigenvalues()
        .iter()
        .map(|z| (z.re, z.im))
        .collect();
    eigenvalues.sort_by(|x, y| y.0.total_cmp(&x.0));
    let lambda1 = eigenvalues[0].0;
    let lambda2 = eigenvalues[1].0;
    let matrix = (0..m).map(|i| (0..m).map(|j| a[(i, j)]).collect()).collect();
    Ok(JansonReport {
        m,
        p,
        weights,
        increments,
        matrix,
        eigenvalues,
        lambda1,
        lambda2,
        condition_holds: lambda2 < lambda1 / 2.0,
    })
}
