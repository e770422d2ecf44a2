//! Mini-batch gradient training of a single interval network.

mod optim;
mod sweep;

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::autodiff::Tape;
use crate::data::Batch;
use crate::losses::{objective, LossBreakdown, LossConfig, LossKind};
use crate::metrics::EvalReport;
use crate::model::{IntervalPredictor, IntervalVar, Mlp};
use crate::{Error, Result};

pub use optim::{clip_gradient, Optimizer, OptimizerKind};
pub use sweep::{render_table, sweep_lambda, SweepRow, TABLE_LAMBDAS};

// shuffling draws from its own ChaCha stream so it never aliases the init stream
const SHUFFLE_STREAM: u64 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TrainConfig {
    pub loss: LossKind,
    pub loss_config: LossConfig,
    pub batch_size: usize,
    pub epochs: usize,
    pub learning_rate: f64,
    pub optimizer: OptimizerKind,
    pub seed: u64,
    /// Global L2 norm limit on each gradient; `inf` disables clipping.
    pub clip_norm: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            loss: LossKind::Ubpi,
            loss_config: LossConfig::default(),
            batch_size: 100,
            epochs: 2000,
            learning_rate: 1e-2,
            optimizer: OptimizerKind::Adam,
            seed: 0,
            clip_norm: 10.0,
        }
    }
}

impl TrainConfig {
    pub const TOY_EPOCHS: usize = 800;
    pub const BENCHMARK_EPOCHS: usize = 2000;

    pub fn validate(&self, n_train: usize) -> Result<()> {
        self.loss_config.validate()?;
        if self.epochs == 0 {
            return Err(Error::config("epochs must be at least 1"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::config(format!(
                "learning rate {} must be > 0",
                self.learning_rate
            )));
        }
        if self.batch_size == 0 || self.batch_size > n_train {
            return Err(Error::config(format!(
                "batch size {} must be in 1..={n_train}",
                self.batch_size
            )));
        }
        if !(self.clip_norm > 0.0) {
            return Err(Error::config("clip norm must be > 0"));
        }
        Ok(())
    }
}

/// Per-epoch record: mean loss stages over the epoch's mini-batches, then
/// hard metrics of the updated network on the whole training split.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    pub loss: LossBreakdown,
    pub train_picp: f64,
    pub train_mpiw: f64,
    pub crossing_rate: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct TrainTrace {
    pub epochs: Vec<EpochRecord>,
}

impl TrainTrace {
    pub const CSV_HEADER: &'static str =
        "epoch,total,l_ue,l_pi,mse,mpiw_batch,picp_soft,train_picp,train_mpiw,crossing_rate";

    pub fn len(&self) -> usize {
        self.epochs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.epochs.is_empty()
    }

    pub fn last(&self) -> Option<&EpochRecord> {
        self.epochs.last()
    }

    /// Full-precision CSV; identical traces give identical bytes.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(Self::CSV_HEADER);
        s.push('\n');
        for r in &self.epochs {
            let l = &r.loss;
            writeln!(
                s,
                "{},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?},{:?}",
                r.epoch,
                l.total,
                l.l_ue,
                l.l_pi,
                l.mse,
                l.mpiw,
                l.picp_soft,
                r.train_picp,
                r.train_mpiw,
                r.crossing_rate
            )
            .unwrap();
        }
        s
    }
}

/// Loss stages and parameter gradient for the rows `rows` of `data`.
fn batch_gradient(
    tape: &mut Tape,
    mlp: &Mlp,
    data: &Batch,
    rows: &[usize],
    cfg: &TrainConfig,
    target_range: f64,
) -> Result<(LossBreakdown, Vec<f64>)> {
    tape.clear();
    let vars = mlp.bind(tape)?;
    let mut ivs: Vec<IntervalVar> = Vec::with_capacity(rows.len());
    let mut ys = Vec::with_capacity(rows.len());
    for &i in rows {
        ivs.push(mlp.forward_row(tape, &vars, data.row(i)));
        ys.push(data.targets()[i]);
    }
    let (root, breakdown) = objective(tape, cfg.loss, &ivs, &ys, &cfg.loss_config, target_range)?;
    let grads = tape.backward(root)?;
    Ok((breakdown, vars.iter().map(|v| grads.wrt(*v)).collect()))
}

/// Objective value and gradient over the full `data` batch.
pub fn loss_and_gradient(mlp: &Mlp, data: &Batch, cfg: &TrainConfig) -> Result<(LossBreakdown, Vec<f64>)> {
    let rows: Vec<usize> = (0..data.len()).collect();
    batch_gradient(&mut Tape::new(), mlp, data, &rows, cfg, data.target_range())
}

/// Trains `mlp` on `data` (already standardized) and returns the trained
/// network with its per-epoch trace. Deterministic for a given `cfg.seed`.
pub fn train(mut mlp: Mlp, data: &Batch, cfg: &TrainConfig) -> Result<(Mlp, TrainTrace)> {
    cfg.validate(data.len())?;
    if mlp.input_dim() != data.dim() {
        return Err(Error::Shape(format!(
            "model expects {} features, data has {}",
            mlp.input_dim(),
            data.dim()
        )));
    }
    let target_range = data.target_range();
    if cfg.loss == LossKind::Lube && !(target_range > 0.0) {
        return Err(Error::config("LUBE needs a non-constant target"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(SHUFFLE_STREAM);
    let mut opt = Optimizer::new(cfg.optimizer, cfg.learning_rate, mlp.params().len());
    let mut tape = Tape::new();
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut trace = TrainTrace::default();

    for epoch in 0..cfg.epochs {
        order.shuffle(&mut rng);
        let mut sum = LossBreakdown::default();
        let mut batches = 0usize;
        for (step, rows) in order.chunks(cfg.batch_size).enumerate() {
            let diverged = |reason: String| Error::Diverged { epoch, step, reason };
            let (b, mut grad) =
                batch_gradient(&mut tape, &mlp, data, rows, cfg, target_range).map_err(|e| diverged(e.to_string()))?;
            if !b.total.is_finite() || grad.iter().any(|g| !g.is_finite()) {
                return Err(diverged(format!("non-finite loss {}", b.total)));
            }
            clip_gradient(&mut grad, cfg.clip_norm);
            opt.step(mlp.params_mut(), &grad);
            if !mlp.is_finite() {
                return Err(diverged("non-finite parameters".into()));
            }
            sum.total += b.total;
            sum.l_ue += b.l_ue;
            sum.l_pi += b.l_pi;
            sum.mse += b.mse;
            sum.mpiw += b.mpiw;
            sum.picp_soft += b.picp_soft;
            batches += 1;
        }
        let k = 1.0 / batches as f64;
        let loss = LossBreakdown {
            total: sum.total * k,
            l_ue: sum.l_ue * k,
            l_pi: sum.l_pi * k,
            mse: sum.mse * k,
            mpiw: sum.mpiw * k,
            picp_soft: sum.picp_soft * k,
        };
        let report = EvalReport::from_intervals(&mlp.predict(data)?, data.targets(), None)?;
        trace.epochs.push(EpochRecord {
            epoch,
            loss,
            train_picp: report.picp,
            train_mpiw: report.mpiw,
            crossing_rate: report.crossing_rate,
        });
    }
    Ok((mlp, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{toy_wave, NoiseScale};
    use crate::metrics;

    fn wave() -> Batch {
        toy_wave(100, 0, (-5.0, 5.0), NoiseScale::Variance).unwrap()
    }

    #[test]
    fn config_rejections() {
        let b = wave();
        let m = Mlp::init(1, 8, 0).unwrap();
        for cfg in [
            TrainConfig {
                epochs: 0,
                ..Default::default()
            },
            TrainConfig {
                learning_rate: 0.0,
                ..Default::default()
            },
            TrainConfig {
                learning_rate: -1.0,
                ..Default::default()
            },
            TrainConfig {
                batch_size: 101,
                ..Default::default()
            },
            TrainConfig {
                batch_size: 0,
                ..Default::default()
            },
        ] {
            assert!(matches!(train(m.clone(), &b, &cfg), Err(Error::Config(_))), "{cfg:?}");
        }
    }

    #[test]
    fn pure_l_ue_reduces_mse() {
        let b = wave();
        let m = Mlp::init(1, 50, 1).unwrap();
        let cfg = TrainConfig {
            loss_config: LossConfig {
                lambda: 0.0,
                ..Default::default()
            },
            epochs: 200,
            ..Default::default()
        };
        let before = metrics::mse_midpoint(&m.predict(&b).unwrap(), b.targets()).unwrap();
        let (trained, trace) = train(m, &b, &cfg).unwrap();
        let after = metrics::mse_midpoint(&trained.predict(&b).unwrap(), b.targets()).unwrap();
        assert!(after < before, "{after} >= {before}");
        assert_eq!(trace.len(), 200);
    }

    #[test]
    fn training_is_deterministic() {
        let b = wave();
        let cfg = TrainConfig {
            epochs: 30,
            batch_size: 32,
            seed: 5,
            ..Default::default()
        };
        let (a, ta) = train(Mlp::init(1, 20, 5).unwrap(), &b, &cfg).unwrap();
        let (c, tc) = train(Mlp::init(1, 20, 5).unwrap(), &b, &cfg).unwrap();
        let bits = |m: &Mlp| m.params().iter().map(|p| p.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&a), bits(&c));
        assert_eq!(ta.to_csv(), tc.to_csv());
    }

    #[test]
    fn every_loss_kind_trains() {
        let b = wave();
        for loss in [LossKind::Ubpi, LossKind::Lube, LossKind::Mbpep, LossKind::Pinball] {
            let cfg = TrainConfig {
                loss,
                epochs: 20,
                ..Default::default()
            };
            let (m, trace) = train(Mlp::init(1, 10, 0).unwrap(), &b, &cfg).unwrap();
            assert!(m.is_finite());
            assert_eq!(trace.len(), 20);
        }
    }

    /// One SGD step of size η changes the loss by −η‖g‖² to first order.
    #[test]
    fn sgd_step_matches_first_order_prediction() {
        let b = wave();
        let cfg = TrainConfig {
            optimizer: OptimizerKind::Sgd,
            ..Default::default()
        };
        let m = Mlp::init(1, 16, 3).unwrap();
        let (l0, g) = loss_and_gradient(&m, &b, &cfg).unwrap();
        let g2: f64 = g.iter().map(|x| x * x).sum();
        for eta in [1e-5, 1e-6, 1e-7] {
            let mut stepped = m.clone();
            Optimizer::new(OptimizerKind::Sgd, eta, g.len()).step(stepped.params_mut(), &g);
            let (l1, _) = loss_and_gradient(&stepped, &b, &cfg).unwrap();
            let actual = l1.total - l0.total;
            let predicted = -eta * g2;
            // the remainder is O(η²): relative error shrinks with η
            assert!(
                (actual - predicted).abs() <= 0.05 * predicted.abs(),
                "eta {eta}: actual {actual}, predicted {predicted}"
            );
        }
    }

    #[test]
    fn trace_csv_has_one_row_per_epoch() {
        let b = wave();
        let cfg = TrainConfig {
            epochs: 3,
            ..Default::default()
        };
        let (_, trace) = train(Mlp::init(1, 4, 0).unwrap(), &b, &cfg).unwrap();
        let csv = trace.to_csv();
        assert_eq!(csv.lines().count(), 4);
        assert_eq!(csv.lines().next().unwrap(), TrainTrace::CSV_HEADER);
    }
}
