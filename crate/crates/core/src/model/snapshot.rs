//! Plain-text model snapshot.
//!
//! One `key value...` record per line, `#` starts a comment:
//!
//! ```text
//! format ubpi-mlp-v1
//! input_dim 13
//! hidden 50
//! w1 <input_dim*hidden values, row-major input x hidden>
//! b1 <hidden values>
//! w2 <hidden*2 values, row-major hidden x 2 (lower, upper)>
//! b2 <lower> <upper>
//! standardized true|false
//! feature_mean <input_dim values>   # only when standardized
//! feature_std <input_dim values>
//! target_mean <value>
//! target_std <value>
//! ```
//!
//! Reals are written in Rust's shortest round-trip form, so reading a file
//! back reproduces every parameter bit for bit.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use super::Mlp;
use crate::data::Standardizer;
use crate::{Error, Result};

pub const FORMAT_TAG: &str = "ubpi-mlp-v1";

#[derive(Debug, Clone, PartialEq)]
pub struct ModelSnapshot {
    pub mlp: Mlp,
    pub standardizer: Option<Standardizer>,
}

fn push_values(out: &mut String, key: &str, values: &[f64]) {
    out.push_str(key);
    for v in values {
        write!(out, " {v:?}").expect("write to String");
    }
    out.push('\n');
}

impl ModelSnapshot {
    pub fn to_text(&self) -> String {
        let m = &self.mlp;
        let mut out = String::new();
        out.push_str("# prediction-interval network snapshot\n");
        writeln!(out, "format {FORMAT_TAG}").unwrap();
        writeln!(out, "input_dim {}", m.w1_shape().0).unwrap();
        writeln!(out, "hidden {}", m.hidden()).unwrap();
        push_values(&mut out, "w1", m.w1());
        push_values(&mut out, "b1", m.b1());
        push_values(&mut out, "w2", m.w2());
        push_values(&mut out, "b2", m.b2());
        match &self.standardizer {
            None => out.push_str("standardized false\n"),
            Some(st) => {
                out.push_str("standardized true\n");
                push_values(&mut out, "feature_mean", &st.feature_mean);
                push_values(&mut out, "feature_std", &st.feature_std);
                push_values(&mut out, "target_mean", &[st.target_mean]);
                push_values(&mut out, "target_std", &[st.target_std]);
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut fields: HashMap<&str, Vec<&str>> = HashMap::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().expect("non-empty line");
            if fields.insert(key, parts.collect()).is_some() {
                return Err(Error::Snapshot(format!("duplicate key '{key}'")));
            }
        }
        let get = |key: &str| {
            fields
                .get(key)
                .ok_or_else(|| Error::Snapshot(format!("missing key '{key}'")))
        };
        let single = |key: &str| -> Result<&str> {
            match get(key)?.as_slice() {
                [v] => Ok(v),
                _ => Err(Error::Snapshot(format!("'{key}' takes exactly one value"))),
            }
        };
        let count = |key: &str| -> Result<usize> {
            single(key)?
                .parse()
                .map_err(|_| Error::Snapshot(format!("'{key}' is not a count")))
        };
        let reals = |key: &str, expected: usize| -> Result<Vec<f64>> {
            let raw = get(key)?;
            if raw.len() != expected {
                return Err(Error::Snapshot(format!(
                    "'{key}' has {} values, expected {expected}",
                    raw.len()
                )));
            }
            raw.iter()
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| Error::Snapshot(format!("'{key}': bad real {s:?}")))
                })
                .collect()
        };

        let tag = single("format")?;
        if tag != FORMAT_TAG {
            return Err(Error::Snapshot(format!("unsupported format '{tag}'")));
        }
        let input_dim = count("input_dim")?;
        let hidden = count("hidden")?;
        let mut params = reals("w1", input_dim * hidden)?;
        params.extend(reals("b1", hidden)?);
        params.extend(reals("w2", hidden * 2)?);
        params.extend(reals("b2", 2)?);
        let mlp = Mlp::from_params(input_dim, hidden, params)?;

        let standardizer = match single("standardized")? {
            "false" => None,
            "true" => Some(Standardizer {
                feature_mean: reals("feature_mean", input_dim)?,
                feature_std: reals("feature_std", input_dim)?,
                target_mean: reals("target_mean", 1)?[0],
                target_std: reals("target_std", 1)?[0],
            }),
            other => {
                return Err(Error::Snapshot(format!(
                    "'standardized' must be true or false, got '{other}'"
                )))
            }
        };
        Ok(ModelSnapshot { mlp, standardizer })
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_text()).map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_text(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn round_trip_is_bit_exact(seed in any::<u64>(), dim in 1usize..5, hidden in 1usize..8,
                                   scale in prop::num::f64::NORMAL) {
            let mut mlp = Mlp::init(dim, hidden, seed).unwrap();
            mlp.params_mut()[0] *= scale;
            let st = Standardizer {
                feature_mean: (0..dim).map(|i| i as f64 * 0.1 + scale.abs().ln()).collect(),
                feature_std: vec![1.0 / 3.0; dim],
                target_mean: -scale,
                target_std: std::f64::consts::PI,
            };
            for standardizer in [None, Some(st)] {
                let snap = ModelSnapshot { mlp: mlp.clone(), standardizer };
                let back = ModelSnapshot::from_text(&snap.to_text()).unwrap();
                let bits = |m: &Mlp| m.params().iter().map(|p| p.to_bits()).collect::<Vec<_>>();
                prop_assert_eq!(bits(&back.mlp), bits(&snap.mlp));
                prop_assert_eq!(&back, &snap);
            }
        }
    }

    #[test]
    fn rejects_wrong_counts_and_tags() {
        let snap = ModelSnapshot {
            mlp: Mlp::init(2, 3, 0).unwrap(),
            standardizer: None,
        };
        let text = snap.to_text();
        let bad = text.replace("hidden 3", "hidden 4");
        assert!(ModelSnapshot::from_text(&bad).is_err());
        let bad = text.replace(FORMAT_TAG, "other-v9");
        assert!(ModelSnapshot::from_text(&bad).is_err());
        let bad = text.replace("standardized false\n", "");
        assert!(ModelSnapshot::from_text(&bad).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("m.model");
        let snap = ModelSnapshot {
            mlp: Mlp::init(4, 6, 9).unwrap(),
            standardizer: None,
        };
        snap.save(&p).unwrap();
        assert_eq!(ModelSnapshot::load(&p).unwrap(), snap);
    }
}
