//! Deep ensembles of interval networks.
//!
//! Members share architecture and data and differ only in their seed (which
//! drives both initialization and shuffling). For each sample the member
//! bounds are averaged, and their unbiased variance across members is
//! subtracted from the mean lower bound and added to the mean upper bound.

mod snapshot;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::Batch;
use crate::model::{Interval, IntervalPredictor, Mlp};
use crate::trainer::{train, TrainConfig, TrainTrace};
use crate::{Error, Result};

pub use snapshot::{EnsembleManifest, EnsembleSnapshot, SplitInfo};

/// What is added to the mean bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Widening {
    /// The cross-member variance itself.
    #[default]
    Variance,
    /// Its square root.
    StdDev,
}

/// Per-sample ensemble statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleAggregate {
    pub mean_lower: f64,
    pub mean_upper: f64,
    pub var_lower: f64,
    pub var_upper: f64,
    pub interval: Interval,
    pub members: usize,
}

impl EnsembleAggregate {
    /// `var_lower + var_upper`: the cross-member (epistemic) spread.
    pub fn epistemic(&self) -> f64 {
        self.var_lower + self.var_upper
    }
}

// Shifted by the first value, so identical members reproduce it exactly.
fn mean_var(values: impl Iterator<Item = f64> + Clone, m: usize) -> (f64, f64) {
    let Some(first) = values.clone().next() else {
        return (f64::NAN, 0.0);
    };
    let mean = first + values.clone().map(|v| v - first).sum::<f64>() / m as f64;
    if m < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|v| (v - mean) * (v - mean)).sum();
    (mean, ss / (m - 1) as f64)
}

/// Aggregates `member_intervals[j][i]` (member `j`, sample `i`).
pub fn aggregate(member_intervals: &[Vec<Interval>], widening: Widening) -> Result<Vec<EnsembleAggregate>> {
    let m = member_intervals.len();
    if m == 0 {
        return Err(Error::config("ensemble needs at least one member"));
    }
    let n = member_intervals[0].len();
    if let Some((j, v)) = member_intervals.iter().enumerate().find(|(_, v)| v.len() != n) {
        return Err(Error::Shape(format!(
            "member {j} reports {} samples, member 0 reports {n}",
            v.len()
        )));
    }
    Ok((0..n)
        .map(|i| {
            let (mean_lower, var_lower) = mean_var(member_intervals.iter().map(|v| v[i].lower), m);
            let (mean_upper, var_upper) = mean_var(member_intervals.iter().map(|v| v[i].upper), m);
            let (wl, wu) = match widening {
                Widening::Variance => (var_lower, var_upper),
                Widening::StdDev => (var_lower.sqrt(), var_upper.sqrt()),
            };
            EnsembleAggregate {
                mean_lower,
                mean_upper,
                var_lower,
                var_upper,
                interval: Interval::new(mean_lower - wl, mean_upper + wu),
                members: m,
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EnsembleConfig {
    pub members: usize,
    pub hidden: usize,
    pub widening: Widening,
    /// Template for every member; `train.seed` is the base seed.
    pub train: TrainConfig,
}

impl Default for EnsembleConfig {
    fn default() -> Self {
        EnsembleConfig {
            members: 5,
            hidden: 50,
            widening: Widening::Variance,
            train: TrainConfig::default(),
        }
    }
}

impl EnsembleConfig {
    /// Defaults with the shorter toy schedule.
    pub fn toy() -> Self {
        let mut cfg = EnsembleConfig::default();
        cfg.train.epochs = TrainConfig::TOY_EPOCHS;
        cfg
    }

    /// `base, base + 1, ...`: distinct by construction.
    pub fn member_seeds(&self) -> Vec<u64> {
        (0..self.members as u64)
            .map(|j| self.train.seed.wrapping_add(j))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub members: Vec<Mlp>,
    pub seeds: Vec<u64>,
    pub widening: Widening,
}

impl Ensemble {
    pub fn new(members: Vec<Mlp>, seeds: Vec<u64>, widening: Widening) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::config("ensemble needs at least one member"));
        }
        if members.len() != seeds.len() {
            return Err(Error::Shape(format!(
                "{} members but {} seeds",
                members.len(),
                seeds.len()
            )));
        }
        let dim = members[0].input_dim();
        if members.iter().any(|m| m.input_dim() != dim) {
            return Err(Error::Shape("members disagree on input dimension".into()));
        }
        Ok(Ensemble {
            members,
            seeds,
            widening,
        })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn member_intervals(&self, features: &[f64]) -> Result<Vec<Vec<Interval>>> {
        self.members.iter().map(|m| m.predict_features(features)).collect()
    }

    pub fn aggregate_features(&self, features: &[f64]) -> Result<Vec<EnsembleAggregate>> {
        aggregate(&self.member_intervals(features)?, self.widening)
    }
}

impl IntervalPredictor for Ensemble {
    fn input_dim(&self) -> usize {
        self.members[0].input_dim()
    }

    fn predict_features(&self, features: &[f64]) -> Result<Vec<Interval>> {
        Ok(self
            .aggregate_features(features)?
            .into_iter()
            .map(|a| a.interval)
            .collect())
    }
}

/// Trains one member per seed on the full `data` (no resampling).
///
/// Members run on the rayon pool; each owns its network, tape and RNG.
pub fn train_ensemble(data: &Batch, cfg: &EnsembleConfig, seeds: &[u64]) -> Result<(Ensemble, Vec<TrainTrace>)> {
    if seeds.is_empty() {
        return Err(Error::config("ensemble needs at least one member"));
    }
    for (i, s) in seeds.iter().enumerate() {
        if seeds[..i].contains(s) {
            return Err(Error::config(format!("duplicate member seed {s}")));
        }
    }
    let results: Vec<Result<(Mlp, TrainTrace)>> = seeds
        .par_iter()
        .enumerate()
        .map(|(member, &seed)| {
            let wrap = |e: Error| Error::Member {
                member,
                seed,
                source: Box::new(e),
            };
            let mlp = Mlp::init(data.dim(), cfg.hidden, seed).map_err(wrap)?;
            let train_cfg = TrainConfig { seed, ..cfg.train };
            train(mlp, data, &train_cfg).map_err(wrap)
        })
        .collect();
    let mut members = Vec::with_capacity(seeds.len());
    let mut traces = Vec::with_capacity(seeds.len());
    for r in results {
        let (m, t) = r?;
        members.push(m);
        traces.push(t);
    }
    Ok((Ensemble::new(members, seeds.to_vec(), cfg.widening)?, traces))
}
