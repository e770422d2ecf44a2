//! Interval losses, all recorded on an autodiff [`Tape`].
//!
//! The hybrid loss is assembled in this order for a mini-batch of `n`
//! intervals:
//!
//! 1. midpoints `(ŷ_L + ŷ_U) / 2`
//! 2. `MSE` of the midpoints against the targets
//! 3. `MPIW = mean(ŷ_U - ŷ_L)`
//! 4. soft coverage `c_i = σ(s(ŷ_U - y))·σ(s(y - ŷ_L))`
//! 5. `PICP = mean(c_i)`
//! 6. `L_UE = n/2 · (MSE / M + log M)` with `M = max(MPIW, ε)`
//! 7. `L_PI = max(0, P_c - PICP)²`
//! 8. `L = L_UE + λ·L_PI`
//!
//! The floor `ε` only exists inside `L_UE`; [`crate::metrics`] reports the raw
//! width.

use serde::{Deserialize, Serialize};

use crate::autodiff::{sigmoid, Tape, Var};
use crate::model::{Interval, IntervalVar};
use crate::{Error, Result};


#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LossConfig {
    /// Target coverage `P_c` (also `1 - α` in the comparison losses).
    pub confidence: f64,
    /// Weight of the coverage penalty.
    pub lambda: f64,
    /// Sigmoid sharpness `s` of the soft coverage indicator.
    pub soften: f64,
    /// Lower clamp on MPIW inside `L_UE`.
    pub mpiw_floor: f64,
}

impl Default for LossConfig {
    fn default() -> Self {
        LossConfig {
            confidence: 0.95,
            lambda: 15.0,
            soften: 160.0,
            mpiw_floor: 1e-6,
        }
    }
}

impl LossConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.confidence > 0.0 && self.confidence < 1.0) {
            return Err(Error::config(format!(
                "confidence level {} outside (0, 1)",
                self.confidence
            )));
        }
        if !(self.lambda >= 0.0 && self.lambda.is_finite()) {
            return Err(Error::config(format!("lambda {} must be >= 0", self.lambda)));
        }
        if !(self.soften > 0.0 && self.soften.is_finite()) {
            return Err(Error::config(format!("soften {} must be > 0", self.soften)));
        }
        if !(self.mpiw_floor > 0.0 && self.mpiw_floor.is_finite()) {
            return Err(Error::config(format!("mpiw floor {} must be > 0", self.mpiw_floor)));
        }
        Ok(())
    }
}

/// Scalar values of every hybrid-loss stage for one batch.
///
/// For the hybrid loss `total == l_ue + λ·l_pi`. For the comparison losses
/// `total` is that loss and the other fields are hybrid diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct LossBreakdown {
    pub total: f64,
    pub l_ue: f64,
    pub l_pi: f64,
    pub mse: f64,
    pub mpiw: f64,
    pub picp_soft: f64,
}

/// Which objective a network is trained on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum LossKind {
    /// Hybrid uncertainty loss.
    #[default]
    Ubpi,
    /// Lower-upper bound estimation loss, with soft coverage.
    Lube,
    /// Width plus ReLU coverage penalty.
    Mbpep,
    /// Quantile regression: pinball loss at the two tail levels of `P_c`.
    Pinball,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::Ubpi => "ubpi",
            LossKind::Lube => "lube",
            LossKind::Mbpep => "mbpep",
            LossKind::Pinball => "pinball",
        }
    }
}

fn check_batch(ivs: &[IntervalVar], ys: &[f64]) -> Result<()> {
    if ivs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    if ivs.len() != ys.len() {
        return Err(Error::Shape(format!(
            "{} intervals for {} targets",
            ivs.len(),
            ys.len()
        )));
    }
    Ok(())
}

/// `σ(s(ŷ_U - y))·σ(s(y - ŷ_L))` on plain numbers.
pub fn soft_coverage_value(iv: Interval, y: f64, s: f64) -> f64 {
    sigmoid(s * (iv.upper - y)) * sigmoid(s * (y - iv.lower))
}

pub fn soft_coverage(tape: &mut Tape, iv: IntervalVar, y: f64, s: f64) -> Var {
    let above = tape.add_const(iv.upper, -y);
    let above = tape.scale(above, s);
    let above = tape.sigmoid(above);
    let below = tape.neg(iv.lower);
    let below = tape.add_const(below, y);
    let below = tape.scale(below, s);
    let below = tape.sigmoid(below);
    tape.mul(above, below)
}

pub fn picp_soft(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], s: f64) -> Result<Var> {
    check_batch(ivs, ys)?;
    let cs: Vec<Var> = ivs
        .iter()
        .zip(ys)
        .map(|(iv, &y)| soft_coverage(tape, *iv, y, s))
        .collect();
    Ok(tape.mean(&cs)?)
}

/// Mean width; negative when intervals are crossed.
pub fn mpiw(tape: &mut Tape, ivs: &[IntervalVar]) -> Result<Var> {
    if ivs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let widths: Vec<Var> = ivs.iter().map(|iv| tape.sub(iv.upper, iv.lower)).collect();
    Ok(tape.mean(&widths)?)
}

/// Mean squared error of interval midpoints.
pub fn mse_midpoint(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64]) -> Result<Var> {
    check_batch(ivs, ys)?;
    let sq: Vec<Var> = ivs
        .iter()
        .zip(ys)
        .map(|(iv, &y)| {
            let sum = tape.add(iv.lower, iv.upper);
            let mid = tape.scale(sum, 0.5);
            let r = tape.add_const(mid, -y);
            tape.square(r)
        })
        .collect();
    Ok(tape.mean(&sq)?)
}

/// `n/2 · (mse / M + log M)` with `M = max(mpiw, floor)`.
pub fn loss_ue_from_parts(tape: &mut Tape, mse: Var, mpiw: Var, n: usize, floor: f64) -> Result<Var> {
    let floor = tape.constant(floor)?;
    let m = tape.max(mpiw, floor);
    let ratio = tape.div(mse, m)?;
    let log_m = tape.log(m)?;
    let inner = tape.add(ratio, log_m);
    Ok(tape.scale(inner, n as f64 / 2.0))
}

pub fn loss_ue(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], floor: f64) -> Result<Var> {
    let mse = mse_midpoint(tape, ivs, ys)?;
    let mp = mpiw(tape, ivs)?;
    loss_ue_from_parts(tape, mse, mp, ivs.len(), floor)
}

/// `max(0, P_c - picp)²`.
pub fn loss_pi(tape: &mut Tape, picp: Var, confidence: f64) -> Var {
    let deficit = coverage_deficit(tape, picp, confidence);
    tape.square(deficit)
}

pub fn loss_pi_value(picp: f64, confidence: f64) -> f64 {
    let d = (confidence - picp).max(0.0);
    d * d
}

// max(0, P_c - picp)
fn coverage_deficit(tape: &mut Tape, picp: Var, confidence: f64) -> Var {
    let d = tape.neg(picp);
    let d = tape.add_const(d, confidence);
    tape.relu(d)
}

/// Hybrid loss root plus its scalar stages.
#[derive(Debug, Clone, Copy)]
pub struct HybridLoss {
    pub total: Var,
    pub breakdown: LossBreakdown,
}

pub fn hybrid_loss(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], cfg: &LossConfig) -> Result<HybridLoss> {
    check_batch(ivs, ys)?;
    let mse = mse_midpoint(tape, ivs, ys)?;
    let mp = mpiw(tape, ivs)?;
    let picp = picp_soft(tape, ivs, ys, cfg.soften)?;
    let l_ue = loss_ue_from_parts(tape, mse, mp, ivs.len(), cfg.mpiw_floor)?;
    let l_pi = loss_pi(tape, picp, cfg.confidence);
    let weighted = tape.scale(l_pi, cfg.lambda);
    let total = tape.add(l_ue, weighted);
    Ok(HybridLoss {
        total,
        breakdown: LossBreakdown {
            total: tape.value(total),
            l_ue: tape.value(l_ue),
            l_pi: tape.value(l_pi),
            mse: tape.value(mse),
            mpiw: tape.value(mp),
            picp_soft: tape.value(picp),
        },
    })
}

/// `(mpiw / r)·(1 + exp(λ·max(0, P_c - picp)))`.
pub fn lube_from_parts(tape: &mut Tape, mpiw: Var, picp: Var, cfg: &LossConfig, range: f64) -> Result<Var> {
    if !(range > 0.0 && range.is_finite()) {
        return Err(Error::config(format!("target range {range} must be > 0")));
    }
    let deficit = coverage_deficit(tape, picp, cfg.confidence);
    let scaled = tape.scale(deficit, cfg.lambda);
    let e = tape.exp(scaled)?;
    let factor = tape.add_const(e, 1.0);
    let width = tape.scale(mpiw, 1.0 / range);
    Ok(tape.mul(width, factor))
}

pub fn lube_loss(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], cfg: &LossConfig, range: f64) -> Result<Var> {
    let mp = mpiw(tape, ivs)?;
    let picp = picp_soft(tape, ivs, ys, cfg.soften)?;
    lube_from_parts(tape, mp, picp, cfg, range)
}

/// `mpiw + λ·ReLU(P_c - picp)`.
pub fn mbpep_from_parts(tape: &mut Tape, mpiw: Var, picp: Var, cfg: &LossConfig) -> Var {
    let deficit = coverage_deficit(tape, picp, cfg.confidence);
    let penalty = tape.scale(deficit, cfg.lambda);
    tape.add(mpiw, penalty)
}

pub fn mbpep_loss(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], cfg: &LossConfig) -> Result<Var> {
    let mp = mpiw(tape, ivs)?;
    let picp = picp_soft(tape, ivs, ys, cfg.soften)?;
    Ok(mbpep_from_parts(tape, mp, picp, cfg))
}

/// Pinball loss of a quantile prediction `q` at level `tau`.
pub fn pinball(q: f64, y: f64, tau: f64) -> f64 {
    if y >= q {
        tau * (y - q)
    } else {
        (1.0 - tau) * (q - y)
    }
}

pub fn pinball_loss(tape: &mut Tape, q: Var, y: f64, tau: f64) -> Var {
    let under = tape.neg(q);
    let under = tape.add_const(under, y);
    let under = tape.relu(under);
    let over = tape.add_const(q, -y);
    let over = tape.relu(over);
    let a = tape.scale(under, tau);
    let b = tape.scale(over, 1.0 - tau);
    tape.add(a, b)
}

/// Quantile levels `((1 - P_c)/2, 1 - (1 - P_c)/2)` for the lower and upper heads.
pub fn quantile_levels(confidence: f64) -> (f64, f64) {
    let tail = (1.0 - confidence) / 2.0;
    (tail, 1.0 - tail)
}

/// Mean over the batch of the lower-head and upper-head pinball losses.
pub fn quantile_interval_loss(tape: &mut Tape, ivs: &[IntervalVar], ys: &[f64], confidence: f64) -> Result<Var> {
    check_batch(ivs, ys)?;
    let (lo, hi) = quantile_levels(confidence);
    let terms: Vec<Var> = ivs
        .iter()
        .zip(ys)
        .map(|(iv, &y)| {
            let a = pinball_loss(tape, iv.lower, y, lo);
            let b = pinball_loss(tape, iv.upper, y, hi);
            tape.add(a, b)
        })
        .collect();
    Ok(tape.mean(&terms)?)
}

/// Records the configured objective and returns its root with hybrid diagnostics.
///
/// `target_range` is only used by LUBE.
pub fn objective(
    tape: &mut Tape,
    kind: LossKind,
    ivs: &[IntervalVar],
    ys: &[f64],
    cfg: &LossConfig,
    target_range: f64,
) -> Result<(Var, LossBreakdown)> {
    let hybrid = hybrid_loss(tape, ivs, ys, cfg)?;
    let mut breakdown = hybrid.breakdown;
    let root = match kind {
        LossKind::Ubpi => hybrid.total,
        LossKind::Lube => lube_loss(tape, ivs, ys, cfg, target_range)?,
        LossKind::Mbpep => mbpep_loss(tape, ivs, ys, cfg)?,
        LossKind::Pinball => quantile_interval_loss(tape, ivs, ys, cfg.confidence)?,
    };
    breakdown.total = tape.value(root);
    Ok((root, breakdown))
}
