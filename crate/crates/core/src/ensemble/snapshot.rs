//! Ensemble snapshot directory: `manifest.toml` plus one model file per member
//! (`member_00.model`, `member_01.model`, ...).

use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{Ensemble, EnsembleConfig, Widening};
use crate::data::Standardizer;
use crate::model::ModelSnapshot;
use crate::{Error, Result};

pub const MANIFEST_FILE: &str = "manifest.toml";
pub const FORMAT_TAG: &str = "ubpi-ensemble-v1";

/// Where the training split came from, so the test split can be rebuilt.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SplitInfo {
    pub profile: String,
    pub seed: u64,
    pub train_fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleManifest {
    pub format: String,
    pub members: usize,
    pub seeds: Vec<u64>,
    pub widening: Widening,
    /// SHA-256 of the TOML rendering of `config`.
    pub config_hash: String,
    pub member_files: Vec<String>,
    pub config: EnsembleConfig,
    pub split: Option<SplitInfo>,
}

pub fn config_hash(cfg: &EnsembleConfig) -> String {
    let text = toml::to_string(cfg).expect("config serializes");
    hex::encode(Sha256::digest(text.as_bytes()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSnapshot {
    pub ensemble: Ensemble,
    pub config: EnsembleConfig,
    pub standardizer: Option<Standardizer>,
    pub split: Option<SplitInfo>,
}

impl EnsembleSnapshot {
    pub fn manifest(&self) -> EnsembleManifest {
        EnsembleManifest {
            format: FORMAT_TAG.to_string(),
            members: self.ensemble.len(),
            seeds: self.ensemble.seeds.clone(),
            widening: self.ensemble.widening,
            config_hash: config_hash(&self.config),
            member_files: (0..self.ensemble.len())
                .map(|j| format!("member_{j:02}.model"))
                .collect(),
            config: self.config,
            split: self.split.clone(),
        }
    }

    pub fn save(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        let manifest = self.manifest();
        for (mlp, file) in self.ensemble.members.iter().zip(&manifest.member_files) {
            ModelSnapshot {
                mlp: mlp.clone(),
                standardizer: self.standardizer.clone(),
            }
            .save(dir.join(file))?;
        }
        let text = toml::to_string(&manifest).map_err(|e| Error::Snapshot(e.to_string()))?;
        let path = dir.join(MANIFEST_FILE);
        std::fs::write(&path, text).map_err(|e| Error::io(&path, e))
    }

    pub fn load(dir: impl AsRef<Path>) -> Result<Self> {
        let dir = dir.as_ref();
        let path = dir.join(MANIFEST_FILE);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        let manifest: EnsembleManifest =
            toml::from_str(&text).map_err(|e| Error::Snapshot(format!("{}: {e}", path.display())))?;
        if manifest.format != FORMAT_TAG {
            return Err(Error::Snapshot(format!("unsupported format '{}'", manifest.format)));
        }
        if manifest.members != manifest.member_files.len() || manifest.members != manifest.seeds.len() {
            return Err(Error::Snapshot("member count disagrees with files/seeds".into()));
        }
        if config_hash(&manifest.config) != manifest.config_hash {
            return Err(Error::Snapshot("config hash mismatch".into()));
        }
        let mut members = Vec::with_capacity(manifest.members);
        let mut standardizer = None;
        for (j, file) in manifest.member_files.iter().enumerate() {
            let snap = ModelSnapshot::load(dir.join(file))?;
            if j == 0 {
                standardizer = snap.standardizer.clone();
            } else if snap.standardizer != standardizer {
                return Err(Error::Snapshot(format!("{file}: standardizer differs from member 0")));
            }
            members.push(snap.mlp);
        }
        Ok(EnsembleSnapshot {
            ensemble: Ensemble::new(members, manifest.seeds, manifest.widening)?,
            config: manifest.config,
            standardizer,
            split: manifest.split,
        })
    }
}
