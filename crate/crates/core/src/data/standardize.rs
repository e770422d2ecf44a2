use super::{Batch, DataError};
use crate::model::Interval;

/// Per-column z-scoring fitted on a training split.
///
/// Uses the population standard deviation, so the fitted split has exactly
/// zero mean and unit variance per column.
#[derive(Debug, Clone, PartialEq)]
pub struct Standardizer {
    pub feature_mean: Vec<f64>,
    pub feature_std: Vec<f64>,
    pub target_mean: f64,
    pub target_std: f64,
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn is_constant(mean: f64, std: f64) -> bool {
    std <= 1e-12 * mean.abs().max(1.0)
}

impl Standardizer {
    /// Fits on `train`. `names` labels columns in the constant-column error
    /// (features first, then the target); pass `&[]` for generic labels.
    pub fn fit(train: &Batch, names: &[String]) -> Result<Self, DataError> {
        let label = |c: usize| {
            names.get(c).cloned().unwrap_or_else(|| {
                if c == train.dim() {
                    "target".to_string()
                } else {
                    format!("feature {c}")
                }
            })
        };
        let mut feature_mean = Vec::with_capacity(train.dim());
        let mut feature_std = Vec::with_capacity(train.dim());
        for c in 0..train.dim() {
            let (m, s) = mean_std(train.rows().map(move |r| r[c]));
            if is_constant(m, s) {
                return Err(DataError::ConstantColumn { name: label(c) });
            }
            feature_mean.push(m);
            feature_std.push(s);
        }
        let (target_mean, target_std) = mean_std(train.targets().iter().copied());
        if is_constant(target_mean, target_std) {
            return Err(DataError::ConstantColumn {
                name: label(train.dim()),
            });
        }
        Ok(Standardizer {
            feature_mean,
            feature_std,
            target_mean,
            target_std,
        })
    }

    pub fn dim(&self) -> usize {
        self.feature_mean.len()
    }

    pub fn apply(&self, batch: &Batch) -> Result<Batch, DataError> {
        if batch.dim() != self.dim() {
            return Err(DataError::Shape(format!(
                "standardizer fitted on {} features, batch has {}",
                self.dim(),
                batch.dim()
            )));
        }
        let features = self.apply_features(batch.features());
        let targets = batch.targets().iter().map(|&y| self.apply_target(y)).collect();
        Batch::new(features, batch.dim(), targets)
    }

    pub fn apply_features(&self, features: &[f64]) -> Vec<f64> {
        features
            .chunks_exact(self.dim())
            .flat_map(|row| {
                row.iter()
                    .zip(self.feature_mean.iter().zip(&self.feature_std))
                    .map(|(x, (m, s))| (x - m) / s)
            })
            .collect()
    }

    pub fn apply_target(&self, y: f64) -> f64 {
        (y - self.target_mean) / self.target_std
    }

    pub fn invert_target(&self, z: f64) -> f64 {
        z * self.target_std + self.target_mean
    }

    pub fn invert_features(&self, features: &[f64]) -> Vec<f64> {
        features
            .chunks_exact(self.dim())
            .flat_map(|row| {
                row.iter()
                    .zip(self.feature_mean.iter().zip(&self.feature_std))
                    .map(|(z, (m, s))| z * s + m)
            })
            .collect()
    }

    pub fn invert_interval(&self, iv: Interval) -> Interval {
        Interval::new(self.invert_target(iv.lower), self.invert_target(iv.upper))
    }
}
