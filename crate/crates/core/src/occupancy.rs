//! Streaming occupancy bookkeeping.
//!
//! [`OccupancyState`] keeps per-urn ball counts together with the full
//! counts-of-counts histogram, so `R_n`, `R_{n,k}` and `R*_{n,k}` are
//! available after every placement at O(1) (resp. O(k)) cost.
//! [`record_checkpoints`] drives a placement stream through a state and
//! snapshots it on a schedule, producing a [`Trajectory`].

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::distributions::UrnId;
use crate::error::{Error, Result};
use crate::models::ModelConfig;

pub const DEFAULT_KMAX: usize = 10;

// Urn ids (resp. ball counts) below these limits live in flat vectors.
const DENSE_URN_LIMIT: u64 = 1 << 24;
const DENSE_COUNT_LIMIT: u64 = 4096;

/// Per-urn ball counts: a flat vector for small ids, a hash map for the rest.
#[derive(Debug, Clone, Default)]
pub struct UrnCounts {
    dense: Vec<u64>,
    sparse: HashMap<UrnId, u64>,
}

impl UrnCounts {
    pub fn get(&self, urn: UrnId) -> u64 {
        if urn < self.dense.len() as u64 {
            self.dense[urn as usize]
        } else {
            self.sparse.get(&urn).copied().unwrap_or(0)
        }
    }

    /// Adds one ball to `urn` and returns its new count.
    pub fn increment(&mut self, urn: UrnId) -> u64 {
        if urn < DENSE_URN_LIMIT {
            let len = self.dense.len() as u64;
            if urn >= len && urn < (2 * len).max(1024) {
                // Grow geometrically, migrating any sparse entries that now fit.
                let new_len = (2 * len).clamp(1024, DENSE_URN_LIMIT) as usize;
                self.dense.resize(new_len, 0);
                let moved: Vec<UrnId> = self
                    .sparse
                    .keys()
                    .copied()
                    .filter(|&u| u < new_len as u64)
                    .collect();
                for u in moved {
                    let c = self.sparse.remove(&u).unwrap_or(0);
                    self.dense[u as usize] = c;
                }
            }
            if urn < self.dense.len() as u64 {
                let slot = &mut self.dense[urn as usize];
                *slot += 1;
                return *slot;
            }
        }
        self.bump_sparse(urn)
    }

    fn bump_sparse(&mut self, urn: UrnId) -> u64 {
        let c = self.sparse.entry(urn).or_insert(0);
        *c += 1;
        *c
    }
}

/// Live state of one run: urn counts plus counts-of-counts.
#[derive(Debug, Clone, Default)]
pub struct OccupancyState {
    urns: UrnCounts,
    cc_dense: Vec<u64>,
    cc_sparse: BTreeMap<u64, u64>,
    total_balls: u64,
    distinct_urns: u64,
}

impl OccupancyState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn total_balls(&self) -> u64 {
        self.total_balls
    }

    /// `R_n`.
    pub fn distinct_urns(&self) -> u64 {
        self.distinct_urns
    }

    pub fn urn_count(&self, urn: UrnId) -> u64 {
        self.urns.get(urn)
    }

    /// `R_{n,k}`: urns holding exactly `k` balls (`k ≥ 1`).
    pub fn urns_with(&self, k: u64) -> u64 {
        if k == 0 {
            return 0;
        }
        if k < DENSE_COUNT_LIMIT {
            self.cc_dense.get(k as usize).copied().unwrap_or(0)
        } else {
            self.cc_sparse.get(&k).copied().unwrap_or(0)
        }
    }

    /// Nonzero `(k, R_{n,k})` pairs in increasing `k`.
    pub fn count_of_counts(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.cc_dense
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c > 0)
            .map(|(k, &c)| (k as u64, c))
            .chain(self.cc_sparse.iter().map(|(&k, &c)| (k, c)))
    }

    pub fn place_ball(&mut self, urn: UrnId) {
        let new = self.urns.increment(urn);
        if new == 1 {
            self.distinct_urns += 1;
        } else {
            self.bump_cc(new - 1, false);
        }
        self.bump_cc(new, true);
        self.total_balls += 1;
    }

    fn bump_cc(&mut self, k: u64, up: bool) {
        if k < DENSE_COUNT_LIMIT {
            let k = k as usize;
            if k >= self.cc_dense.len() {
                self.cc_dense.resize((k + 1).max(2 * self.cc_dense.len()).max(16), 0);
            }
            if up {
                self.cc_dense[k] += 1;
            } else {
                self.cc_dense[k] -= 1;
            }
        } else if up {
            *self.cc_sparse.entry(k).or_insert(0) += 1;
        } else if let Some(c) = self.cc_sparse.get_mut(&k) {
            *c -= 1;
            if *c == 0 {
                self.cc_sparse.remove(&k);
            }
        }
    }

    /// `R*_{n,1..kmax}`: urns holding at least `k` balls.
    pub fn cumulative_counts(&self, kmax: usize) -> Vec<u64> {
        let mut out = Vec::with_capacity(kmax);
        let mut at_least = self.distinct_urns;
        for k in 1..=kmax as u64 {
            out.push(at_least);
            at_least -= self.urns_with(k);
        }
        out
    }

    pub fn checkpoint(&self, kmax: usize) -> Checkpoint {
        let r_k: Vec<u64> = (1..=kmax as u64).map(|k| self.urns_with(k)).collect();
        let overflow = self.distinct_urns - r_k.iter().sum::<u64>();
        Checkpoint {
            n: self.total_balls,
            r: self.distinct_urns,
            r_k,
            overflow,
        }
    }
}

/// Snapshot `(n, R_n, R_{n,1..kmax}, #urns with more than kmax balls)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub n: u64,
    pub r: u64,
    pub r_k: Vec<u64>,
    pub overflow: u64,
}

impl Checkpoint {
    /// `R_{n,k}` for `1 ≤ k ≤ kmax`.
    pub fn exactly(&self, k: usize) -> u64 {
        self.r_k[k - 1]
    }

    /// `R*_{n,k}` for `1 ≤ k ≤ kmax + 1`.
    pub fn at_least(&self, k: usize) -> u64 {
        self.r - self.r_k[..k - 1].iter().sum::<u64>()
    }

    /// Balls held by the overflow urns, recovered from the mass identity.
    pub fn overflow_mass(&self) -> u64 {
        let counted: u64 = self
            .r_k
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u64 + 1) * c)
            .sum();
        self.n - counted
    }
}

/// Checkpointed path of one run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub kmax: usize,
    pub checkpoints: Vec<Checkpoint>,
    /// The configuration that produced this path; `None` for corpus input.
    pub model: Option<ModelConfig>,
}

impl Trajectory {
    pub fn last(&self) -> Option<&Checkpoint> {
        self.checkpoints.last()
    }

    pub fn at(&self, n: u64) -> Option<&Checkpoint> {
        self.checkpoints
            .binary_search_by_key(&n, |c| c.n)
            .ok()
            .map(|i| &self.checkpoints[i])
    }

    pub fn csv_header(kmax: usize) -> String {
        let mut h = String::from("n,R");
        for k in 1..=kmax {
            let _ = write!(h, ",R{k}");
        }
        h.push_str(",Roverflow");
        h
    }

    /// `n,R,R1,...,Rkmax,Roverflow`, one row per checkpoint, integers only.
    pub fn to_csv(&self) -> String {
        let mut out = Self::csv_header(self.kmax);
        out.push('\n');
        for c in &self.checkpoints {
            let _ = write!(out, "{},{}", c.n, c.r);
            for v in &c.r_k {
                let _ = write!(out, ",{v}");
            }
            let _ = writeln!(out, ",{}", c.overflow);
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::Csv("empty input".into()))?;
        let cols = header.split(',').count();
        if cols < 4 {
            return Err(Error::Csv(format!("header has {cols} columns")));
        }
        let kmax = cols - 3;
        if header != Self::csv_header(kmax) {
            return Err(Error::Csv(format!("unexpected header `{header}`")));
        }
        let mut checkpoints = Vec::new();
        for (lineno, line) in lines.enumerate().filter(|(_, l)| !l.is_empty()) {
            let vals: Vec<u64> = line
                .split(',')
                .map(|v| v.parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::Csv(format!("row {}: {e}", lineno + 2)))?;
            if vals.len() != cols {
                return Err(Error::Csv(format!("row {} has {} fields", lineno + 2, vals.len())));
            }
            checkpoints.push(Checkpoint {
                n: vals[0],
                r: vals[1],
                r_k: vals[2..2 + kmax].to_vec(),
                overflow: vals[cols - 1],
            });
        }
        Ok(Self { kmax, checkpoints, model: None })
    }
}

/// Which checkpoint grid to record along a run of `n` balls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckpointGrid {
    /// `⌊n·2^(-i)⌋` for `i = 0, 1, …` down to 1.
    Geometric,
    /// `⌈n·i/100⌉` for `i = 1..=100`.
    Uniform,
    #[default]
    Both,
}

impl CheckpointGrid {
    /// Sorted, deduplicated schedule for a run of `n` balls. Empty when `n = 0`.
    pub fn schedule(self, n: u64) -> Vec<u64> {
        let mut out = Vec::new();
        if n == 0 {
            return out;
        }
        if matches!(self, Self::Geometric | Self::Both) {
            let mut m = n;
            while m >= 1 {
                out.push(m);
                m /= 2;
            }
        }
        if matches!(self, Self::Uniform | Self::Both) {
            for i in 1..=100u64 {
                out.push(((n as u128 * i as u128).div_ceil(100)) as u64);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Consumes `stream` once, snapshotting the state at every schedule entry.
///
/// The schedule must be strictly increasing. An entry of 0 records the empty
/// state. Balls beyond the last entry are not drawn.
pub fn record_checkpoints<I>(stream: I, schedule: &[u64], kmax: usize) -> Result<Trajectory>
where
    I: IntoIterator<Item = UrnId>,
{
    if kmax == 0 {
        return Err(Error::Domain {
            name: "kmax",
            value: 0.0,
            expected: "integer >= 1",
        });
    }
    if let Some(i) = schedule.windows(2).position(|w| w[0] >= w[1]) {
        return Err(Error::UnsortedSchedule { index: i + 1 });
    }
    let mut state = OccupancyState::new();
    let mut stream = stream.into_iter();
    let mut checkpoints = Vec::with_capacity(schedule.len());
    for &target in schedule {
        while state.total_balls() < target {
            match stream.next() {
                Some(urn) => state.place_ball(urn),
                None => {
                    return Err(Error::StreamExhausted {
                        requested: target,
                        available: state.total_balls(),
                    })
                }
            }
        }
        checkpoints.push(state.checkpoint(kmax));
    }
    Ok(Trajectory {
        kmax,
        checkpoints,
        model: None,
    })
}
