//! Word streams from text, fed through the same occupancy pipeline.
//!
//! A word is a maximal run of alphabetic characters (Unicode `Alphabetic`
//! property, so Cyrillic and accented Latin count), lowercased. Everything
//! else separates words. Distinct words become urns numbered by first
//! occurrence.

use std::collections::HashMap;

use serde::Serialize;

use crate::analysis::{estimate_theta, EstimatorResult};
use crate::error::{Error, Result};
use crate::occupancy::{record_checkpoints, CheckpointGrid, Trajectory};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TokenizerRules {
    pub case_fold: bool,
}

impl Default for TokenizerRules {
    fn default() -> Self {
        Self { case_fold: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TokenStream {
    /// File path, or `-` for standard input.
    pub source: String,
    pub tokens: Vec<String>,
}

impl TokenStream {
    pub fn n(&self) -> u64 {
        self.tokens.len() as u64
    }

    /// Urn id of every token: `1` for the first distinct word, `2` for the next, …
    pub fn urn_ids(&self) -> Vec<u64> {
        let mut ids: HashMap<&str, u64> = HashMap::new();
        self.tokens
            .iter()
            .map(|t| {
                let next = ids.len() as u64 + 1;
                *ids.entry(t.as_str()).or_insert(next)
            })
            .collect()
    }
}

pub fn tokenize(text: &[u8], source: impl Into<String>, rules: TokenizerRules) -> Result<TokenStream> {
    let text = std::str::from_utf8(text).map_err(|e| Error::Encoding { offset: e.valid_up_to() })?;
    let tokens = text
        .split(|c: char| !c.is_alphabetic())
        .filter(|w| !w.is_empty())
        .map(|w| if rules.case_fold { w.to_lowercase() } else { w.to_string() })
        .collect();
    Ok(TokenStream { source: source.into(), tokens })
}

/// Trajectory on the default grid (with `⌊n/2⌋` always present) and both estimators.
pub fn analyze_text(stream: &TokenStream, kmax: usize) -> Result<(Trajectory, EstimatorResult)> {
    let n = stream.n();
    if n == 0 {
        return Err(Error::EmptyStream);
    }
    if n < 2 {
        return Err(Error::Domain {
            name: "n",
            value: n as f64,
            expected: "at least 2 tokens",
        });
    }
    let schedule = CheckpointGrid::Both.schedule(n);
    let traj = record_checkpoints(stream.urn_ids(), &schedule, kmax)?;
    let est = estimate_theta(&traj)?;
    Ok((traj, est))
}
