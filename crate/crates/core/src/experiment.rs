//! End-to-end protocols shared by the command line, the examples and the
//! acceptance tests: benchmark runs on standardized splits and toy runs in
//! raw units.

use crate::data::{split, Batch, LoadedCsv, Standardizer};
use crate::ensemble::{train_ensemble, Ensemble, EnsembleConfig};
use crate::metrics::{evaluate, EvalReport};
use crate::model::{Interval, IntervalPredictor};
use crate::trainer::TrainTrace;
use crate::{Error, Result};

/// Train/test split with both halves standardized by statistics of the
/// training half.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardizedSplit {
    pub train: Batch,
    pub test: Batch,
    pub standardizer: Standardizer,
}

pub fn standardized_split(loaded: &LoadedCsv, train_fraction: f64, seed: u64) -> Result<StandardizedSplit> {
    let (train, test) = split(&loaded.batch, train_fraction, seed)?;
    let standardizer = Standardizer::fit(&train, &loaded.column_labels())?;
    Ok(StandardizedSplit {
        train: standardizer.apply(&train)?,
        test: standardizer.apply(&test)?,
        standardizer,
    })
}

#[derive(Debug, Clone)]
pub struct BenchmarkRun {
    pub ensemble: Ensemble,
    pub traces: Vec<TrainTrace>,
    /// Metrics in standardized target units; `mpiw_raw` carries the width in
    /// original units.
    pub train: EvalReport,
    pub test: EvalReport,
}

pub fn run_benchmark(split: &StandardizedSplit, cfg: &EnsembleConfig) -> Result<BenchmarkRun> {
    let (ensemble, traces) = train_ensemble(&split.train, cfg, &cfg.member_seeds())?;
    let std = Some(split.standardizer.target_std);
    Ok(BenchmarkRun {
        train: evaluate(&ensemble, &split.train, std)?,
        test: evaluate(&ensemble, &split.test, std)?,
        ensemble,
        traces,
    })
}

/// Toy fits happen in raw units so bands plot directly over the data.
#[derive(Debug, Clone)]
pub struct ToyRun {
    pub ensemble: Ensemble,
    pub traces: Vec<TrainTrace>,
    pub report: EvalReport,
}

pub fn run_toy(data: &Batch, cfg: &EnsembleConfig) -> Result<ToyRun> {
    if data.dim() != 1 {
        return Err(Error::Shape(format!(
            "toy data must be one-dimensional, got {}",
            data.dim()
        )));
    }
    let (ensemble, traces) = train_ensemble(data, cfg, &cfg.member_seeds())?;
    Ok(ToyRun {
        report: evaluate(&ensemble, data, None)?,
        ensemble,
        traces,
    })
}

/// `points` evenly spaced inputs on `[lo, hi]` with the model's interval at
/// each.
pub fn interval_band<P: IntervalPredictor + ?Sized>(
    model: &P,
    (lo, hi): (f64, f64),
    points: usize,
) -> Result<(Vec<f64>, Vec<Interval>)> {
    if points < 2 || !(lo < hi) {
        return Err(Error::config(format!(
            "band needs >= 2 points on a non-empty range, got {points} on [{lo}, {hi}]"
        )));
    }
    let grid: Vec<f64> = (0..points)
        .map(|i| lo + (hi - lo) * i as f64 / (points - 1) as f64)
        .collect();
    let ivs = model.predict_features(&grid)?;
    Ok((grid, ivs))
}

/// Column means of `(picp, mpiw)` over repeated runs.
pub fn mean_picp_mpiw(reports: &[EvalReport]) -> Result<(f64, f64)> {
    if reports.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let k = reports.len() as f64;
    Ok((
        reports.iter().map(|r| r.picp).sum::<f64>() / k,
        reports.iter().map(|r| r.mpiw).sum::<f64>() / k,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{toy_wave, NoiseScale};

    #[test]
    fn split_is_standardized_on_train_only() {
        let xs: Vec<f64> = (0..40).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        let loaded = LoadedCsv {
            batch: Batch::from_xy(xs, ys).unwrap(),
            feature_names: vec!["x".into()],
            target_name: "y".into(),
        };
        let s = standardized_split(&loaded, 0.9, 4).unwrap();
        assert_eq!((s.train.len(), s.test.len()), (36, 4));
        let mean = s.train.targets().iter().sum::<f64>() / 36.0;
        assert!(mean.abs() < 1e-10);
    }

    #[test]
    fn band_spans_range() {
        let data = toy_wave(40, 0, (-2.0, 2.0), NoiseScale::Variance).unwrap();
        let mut cfg = EnsembleConfig {
            members: 2,
            hidden: 4,
            ..Default::default()
        };
        cfg.train.epochs = 3;
        cfg.train.batch_size = 40;
        let run = run_toy(&data, &cfg).unwrap();
        let (grid, ivs) = interval_band(&run.ensemble, (-2.0, 2.0), 11).unwrap();
        assert_eq!((grid[0], grid[10], ivs.len()), (-2.0, 2.0, 11));
        assert!(interval_band(&run.ensemble, (1.0, 1.0), 11).is_err());
    }
}
