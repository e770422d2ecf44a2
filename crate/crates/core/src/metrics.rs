//! Hard evaluation measures: coverage (PICP), mean width (MPIW), midpoint
//! MSE and the rate of crossed intervals.

use std::fmt::Write as _;

use crate::data::Batch;
use crate::model::{Interval, IntervalPredictor};
use crate::{Error, Result};

fn check(ivs: &[Interval], ys: &[f64]) -> Result<()> {
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

/// Fraction of targets inside their closed interval.
pub fn picp_hard(ivs: &[Interval], ys: &[f64]) -> Result<f64> {
    check(ivs, ys)?;
    let covered = ivs.iter().zip(ys).filter(|(iv, y)| iv.contains(**y)).count();
    Ok(covered as f64 / ivs.len() as f64)
}

/// Raw mean width (negative widths of crossed intervals included).
pub fn mpiw(ivs: &[Interval]) -> Result<f64> {
    if ivs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    Ok(ivs.iter().map(Interval::width).sum::<f64>() / ivs.len() as f64)
}

pub fn mse_midpoint(ivs: &[Interval], ys: &[f64]) -> Result<f64> {
    check(ivs, ys)?;
    Ok(ivs
        .iter()
        .zip(ys)
        .map(|(iv, y)| (iv.midpoint() - y).powi(2))
        .sum::<f64>()
        / ivs.len() as f64)
}

pub fn crossing_rate(ivs: &[Interval]) -> Result<f64> {
    if ivs.is_empty() {
        return Err(Error::EmptyBatch);
    }
    Ok(ivs.iter().filter(|iv| iv.is_crossed()).count() as f64 / ivs.len() as f64)
}

/// Evaluation of a model on one split, on the (standardized) scale the model
/// predicts in. `mpiw_raw` is the width in original target units when the
/// target scale is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalReport {
    pub n: usize,
    pub picp: f64,
    pub mpiw: f64,
    pub mse_midpoint: f64,
    pub crossing_rate: f64,
    pub mpiw_raw: Option<f64>,
}

impl EvalReport {
    /// CSV column order of [`EvalReport::csv_row`].
    pub const CSV_HEADER: &'static str = "n,picp,mpiw,mse_midpoint,crossing_rate,mpiw_raw";

    pub fn from_intervals(ivs: &[Interval], ys: &[f64], target_std: Option<f64>) -> Result<Self> {
        if ivs.iter().any(|iv| !iv.is_finite()) {
            return Err(Error::NonFiniteModel);
        }
        let mpiw = mpiw(ivs)?;
        Ok(EvalReport {
            n: ivs.len(),
            picp: picp_hard(ivs, ys)?,
            mpiw,
            mse_midpoint: mse_midpoint(ivs, ys)?,
            crossing_rate: crossing_rate(ivs)?,
            mpiw_raw: target_std.map(|s| mpiw * s),
        })
    }

    /// Flat `key = value` lines.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        writeln!(s, "n = {}", self.n).unwrap();
        writeln!(s, "picp = {:.6}", self.picp).unwrap();
        writeln!(s, "mpiw = {:.6}", self.mpiw).unwrap();
        writeln!(s, "mse_midpoint = {:.6}", self.mse_midpoint).unwrap();
        writeln!(s, "crossing_rate = {:.6}", self.crossing_rate).unwrap();
        if let Some(v) = self.mpiw_raw {
            writeln!(s, "mpiw_raw = {v:.6}").unwrap();
        }
        s
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6},{:.6},{:.6},{:.6},{}",
            self.n,
            self.picp,
            self.mpiw,
            self.mse_midpoint,
            self.crossing_rate,
            self.mpiw_raw.map(|v| format!("{v:.6}")).unwrap_or_default()
        )
    }
}

/// Evaluates any interval predictor (single network or ensemble) on `split`.
pub fn evaluate<P: IntervalPredictor + ?Sized>(
    model: &P,
    split: &Batch,
    target_std: Option<f64>,
) -> Result<EvalReport> {
    let ivs = model.predict(split)?;
    EvalReport::from_intervals(&ivs, split.targets(), target_std)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Mlp;

    fn iv(l: f64, u: f64) -> Interval {
        Interval::new(l, u)
    }

    #[test]
    fn picp_examples() {
        assert_eq!(picp_hard(&[iv(0.0, 1.0), iv(-1.0, 1.0)], &[0.5, 0.0]).unwrap(), 1.0);
        assert_eq!(picp_hard(&[iv(0.0, 1.0)], &[1.0]).unwrap(), 1.0);
        assert_eq!(picp_hard(&[iv(0.0, 1.0)], &[0.0]).unwrap(), 1.0);
        let mut ivs = vec![iv(0.0, 1.0); 20];
        ivs[7] = iv(2.0, 3.0);
        assert_eq!(picp_hard(&ivs, &[0.5; 20]).unwrap(), 0.95);
        assert!(matches!(picp_hard(&[], &[]), Err(Error::EmptyBatch)));
    }

    #[test]
    fn crossing_and_raw_width() {
        let ivs = [iv(1.0, 0.0), iv(0.0, 3.0)];
        assert_eq!(crossing_rate(&ivs).unwrap(), 0.5);
        assert_eq!(mpiw(&ivs).unwrap(), 1.0);
    }

    /// Emits the same interval for every row.
    struct Constant(Interval);

    impl IntervalPredictor for Constant {
        fn input_dim(&self) -> usize {
            1
        }
        fn predict_features(&self, f: &[f64]) -> Result<Vec<Interval>> {
            Ok(vec![self.0; f.len()])
        }
    }

    /// Emits a zero-width interval at the target encoded in the feature.
    struct Oracle;

    impl IntervalPredictor for Oracle {
        fn input_dim(&self) -> usize {
            1
        }
        fn predict_features(&self, f: &[f64]) -> Result<Vec<Interval>> {
            Ok(f.iter().map(|&x| iv(x, x)).collect())
        }
    }

    #[test]
    fn evaluate_examples() {
        let xs: Vec<f64> = (0..50).map(|i| (i as f64 - 25.0) / 10.0).collect();
        let b = Batch::from_xy(xs.clone(), xs).unwrap();
        let r = evaluate(&Constant(iv(-10.0, 10.0)), &b, Some(2.0)).unwrap();
        assert_eq!(r.picp, 1.0);
        assert_eq!(r.mpiw, 20.0);
        assert_eq!(r.mpiw_raw, Some(40.0));

        let r = evaluate(&Oracle, &b, None).unwrap();
        assert_eq!((r.picp, r.mpiw, r.mse_midpoint), (1.0, 0.0, 0.0));
        assert_eq!(r, evaluate(&Oracle, &b, None).unwrap());
    }

    #[test]
    fn nan_model_rejected() {
        let mut m = Mlp::init(1, 3, 0).unwrap();
        let last = m.params().len() - 1;
        m.params_mut()[last] = f64::NAN;
        let b = Batch::from_xy(vec![0.0], vec![0.0]).unwrap();
        assert!(matches!(evaluate(&m, &b, None), Err(Error::NonFiniteModel)));
    }

    #[test]
    fn serializations() {
        let r = EvalReport {
            n: 20,
            picp: 0.95,
            mpiw: 1.25,
            mse_midpoint: 0.5,
            crossing_rate: 0.0,
            mpiw_raw: Some(2.5),
        };
        assert_eq!(r.csv_row(), "20,0.950000,1.250000,0.500000,0.000000,2.500000");
        assert_eq!(
            EvalReport::CSV_HEADER.split(',').count(),
            r.csv_row().split(',').count()
        );
        assert!(r.to_kv().contains("picp = 0.950000\n"));
    }
}
