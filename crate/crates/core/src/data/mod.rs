//! Datasets: the [`Batch`] container, toy generators, CSV ingestion,
//! standardization and train/test splits.

mod csv_io;
mod standardize;
mod toy;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use csv_io::{load_csv, ColumnRef, CsvSchema, DatasetProfile, HeaderMode, LoadedCsv};
pub use standardize::Standardizer;
pub use toy::{toy_heteroscedastic, toy_wave, wave_mean, NoiseScale, HETERO_AMPLITUDE};

#[derive(Debug, Error)]
pub enum DataError {
    #[error("dataset is empty")]
    Empty,
    #[error("{0}")]
    Shape(String),
    #[error("non-finite value at row {row}, column {column}")]
    NonFinite { row: usize, column: usize },
    #[error("line {line} (row {row}), column {column} '{name}': cannot parse {value:?} as a number")]
    Parse {
        row: usize,
        line: u64,
        column: usize,
        name: String,
        value: String,
    },
    #[error("line {line} (row {row}): expected {expected} fields, found {found}")]
    Ragged {
        row: usize,
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("column {0} not found")]
    MissingColumn(String),
    #[error("column '{name}' is constant on the training split; drop it in the dataset profile")]
    ConstantColumn { name: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {message}")]
    Read { path: String, message: String },
}

/// Feature matrix (row-major, `len × dim`) plus one target per row.
#[derive(Debug, Clone, PartialEq)]
pub struct Batch {
    features: Vec<f64>,
    dim: usize,
    targets: Vec<f64>,
}

impl Batch {
    pub fn new(features: Vec<f64>, dim: usize, targets: Vec<f64>) -> Result<Self, DataError> {
        if targets.is_empty() {
            return Err(DataError::Empty);
        }
        if dim == 0 {
            return Err(DataError::Shape("feature dimension must be at least 1".into()));
        }
        if features.len() != targets.len() * dim {
            return Err(DataError::Shape(format!(
                "{} feature values for {} rows of dimension {dim}",
                features.len(),
                targets.len()
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(DataError::NonFinite {
                row: pos / dim,
                column: pos % dim,
            });
        }
        if let Some(row) = targets.iter().position(|v| !v.is_finite()) {
            return Err(DataError::NonFinite { row, column: dim });
        }
        Ok(Batch { features, dim, targets })
    }

    /// One-dimensional inputs, as produced by the toy generators.
    pub fn from_xy(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self, DataError> {
        Batch::new(xs, 1, ys)
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + Clone + '_ {
        self.features.chunks_exact(self.dim)
    }

    /// Rows at `indices`, in that order.
    pub fn subset(&self, indices: &[usize]) -> Result<Batch, DataError> {
        let mut features = Vec::with_capacity(indices.len() * self.dim);
        let mut targets = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.len() {
                return Err(DataError::InvalidArgument(format!(
                    "row index {i} out of range for {} rows",
                    self.len()
                )));
            }
            features.extend_from_slice(self.row(i));
            targets.push(self.targets[i]);
        }
        Batch::new(features, self.dim, targets)
    }

    /// `max(y) - min(y)`.
    pub fn target_range(&self) -> f64 {
        let (lo, hi) = self
            .targets
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &y| {
                (lo.min(y), hi.max(y))
            });
        hi - lo
    }
}

/// Deterministic random partition of `0..n` into (train, test) index sets.
pub fn split_indices(n: usize, train_fraction: f64, seed: u64) -> Result<(Vec<usize>, Vec<usize>), DataError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DataError::InvalidArgument(format!(
            "train fraction {train_fraction} outside (0, 1)"
        )));
    }
    if n < 2 {
        return Err(DataError::InvalidArgument(format!(
            "need at least 2 rows to split, got {n}"
        )));
    }
    let n_train = ((n as f64 * train_fraction).round() as usize).clamp(1, n - 1);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let test = order.split_off(n_train);
    Ok((order, test))
}

pub fn split(batch: &Batch, train_fraction: f64, seed: u64) -> Result<(Batch, Batch), DataError> {
    let (train, test) = split_indices(batch.len(), train_fraction, seed)?;
    Ok((batch.subset(&train)?, batch.subset(&test)?))
}
