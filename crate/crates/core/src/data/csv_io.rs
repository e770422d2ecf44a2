//! CSV ingestion and dataset profiles.
//!
//! Accepted files are comma separated, UTF-8, with decimal-point reals and an
//! optional single header row. Blank lines are skipped. Every other row must
//! have the same number of fields as the first row, and every cell must parse
//! as a finite number; the first violation aborts the load with its line and
//! column.

use std::fmt;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{Batch, DataError};

/// A column addressed by header name or zero-based position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ColumnRef {
    Index(usize),
    Name(String),
}

impl fmt::Display for ColumnRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColumnRef::Index(i) => write!(f, "#{i}"),
            ColumnRef::Name(n) => write!(f, "'{n}'"),
        }
    }
}

impl ColumnRef {
    fn resolve(&self, names: &[String]) -> Result<usize, DataError> {
        match self {
            ColumnRef::Index(i) if *i < names.len() => Ok(*i),
            ColumnRef::Name(n) => names
                .iter()
                .position(|c| c == n)
                .ok_or_else(|| DataError::MissingColumn(self.to_string())),
            _ => Err(DataError::MissingColumn(self.to_string())),
        }
    }
}

/// Whether the first row is a header.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HeaderMode {
    /// Header iff some cell of the first row is not a number.
    #[default]
    Auto,
    Present,
    Absent,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CsvSchema {
    pub target: ColumnRef,
    pub drop: Vec<ColumnRef>,
    pub header: HeaderMode,
}

impl CsvSchema {
    pub fn new(target: ColumnRef) -> Self {
        CsvSchema {
            target,
            drop: Vec::new(),
            header: HeaderMode::Auto,
        }
    }
}

#[derive(Debug, Clone)]
pub struct LoadedCsv {
    pub batch: Batch,
    pub feature_names: Vec<String>,
    pub target_name: String,
}

impl LoadedCsv {
    /// Feature names followed by the target name.
    pub fn column_labels(&self) -> Vec<String> {
        let mut v = self.feature_names.clone();
        v.push(self.target_name.clone());
        v
    }
}

fn parse_cell(s: &str) -> Option<f64> {
    s.trim().parse::<f64>().ok().filter(|v| v.is_finite())
}

pub fn load_csv(path: impl AsRef<Path>, schema: &CsvSchema) -> Result<LoadedCsv, DataError> {
    let path = path.as_ref();
    let read_err = |message: String| DataError::Read {
        path: path.display().to_string(),
        message,
    };
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| read_err(e.to_string()))?;

    let mut names: Option<Vec<String>> = None;
    let mut width = 0usize;
    let mut cells: Vec<Vec<f64>> = Vec::new();
    let mut data_row = 0usize;

    for record in reader.records() {
        let record = record.map_err(|e| read_err(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.iter().all(|f| f.is_empty()) {
            continue;
        }
        if names.is_none() {
            width = record.len();
            let is_header = match schema.header {
                HeaderMode::Present => true,
                HeaderMode::Absent => false,
                HeaderMode::Auto => record.iter().any(|f| parse_cell(f).is_none()),
            };
            if is_header {
                names = Some(record.iter().map(str::to_string).collect());
                continue;
            }
            names = Some((0..width).map(|i| format!("col{i}")).collect());
        }
        if record.len() != width {
            return Err(DataError::Ragged {
                row: data_row,
                line,
                expected: width,
                found: record.len(),
            });
        }
        let mut row = Vec::with_capacity(width);
        for (column, field) in record.iter().enumerate() {
            let v = parse_cell(field).ok_or_else(|| DataError::Parse {
                row: data_row,
                line,
                column,
                name: names.as_ref().map(|n| n[column].clone()).unwrap_or_default(),
                value: field.to_string(),
            })?;
            row.push(v);
        }
        cells.push(row);
        data_row += 1;
    }

    let names = names.ok_or(DataError::Empty)?;
    if cells.is_empty() {
        return Err(DataError::Empty);
    }
    let target = schema.target.resolve(&names)?;
    let mut keep = vec![true; width];
    keep[target] = false;
    for d in &schema.drop {
        keep[d.resolve(&names)?] = false;
    }
    let feature_cols: Vec<usize> = (0..width).filter(|&c| keep[c]).collect();
    if feature_cols.is_empty() {
        return Err(DataError::Shape("no feature columns left".into()));
    }

    let mut features = Vec::with_capacity(cells.len() * feature_cols.len());
    let mut targets = Vec::with_capacity(cells.len());
    for row in &cells {
        features.extend(feature_cols.iter().map(|&c| row[c]));
        targets.push(row[target]);
    }
    Ok(LoadedCsv {
        batch: Batch::new(features, feature_cols.len(), targets)?,
        feature_names: feature_cols.iter().map(|&c| names[c].clone()).collect(),
        target_name: names[target].clone(),
    })
}

/// Key-value dataset description, stored as TOML:
///
/// ```toml
/// name = "boston"
/// csv = "boston.csv"      # relative to the profile file
/// target = "MEDV"         # header name or zero-based index
/// drop = ["CHAS"]
/// header = "auto"         # auto | present | absent
/// large = false           # true selects 100 hidden units instead of 50
/// ```
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetProfile {
    pub name: String,
    pub csv: PathBuf,
    pub target: ColumnRef,
    #[serde(default)]
    pub drop: Vec<ColumnRef>,
    #[serde(default)]
    pub header: HeaderMode,
    #[serde(default)]
    pub large: bool,
}

impl DatasetProfile {
    pub const HIDDEN: usize = 50;
    pub const HIDDEN_LARGE: usize = 100;

    pub fn load(path: impl AsRef<Path>) -> Result<Self, DataError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| DataError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        let mut profile: DatasetProfile = toml::from_str(&text).map_err(|e| DataError::Read {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        if profile.csv.is_relative() {
            if let Some(dir) = path.parent() {
                profile.csv = dir.join(&profile.csv);
            }
        }
        Ok(profile)
    }

    pub fn schema(&self) -> CsvSchema {
        CsvSchema {
            target: self.target.clone(),
            drop: self.drop.clone(),
            header: self.header,
        }
    }

    pub fn hidden_units(&self) -> usize {
        if self.large {
            Self::HIDDEN_LARGE
        } else {
            Self::HIDDEN
        }
    }

    pub fn load_data(&self) -> Result<LoadedCsv, DataError> {
        load_csv(&self.csv, &self.schema())
    }
}
