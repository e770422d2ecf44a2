use std::fmt::Write as _;

use rayon::prelude::*;

use crate::data::Batch;
use crate::ensemble::{train_ensemble, EnsembleConfig};
use crate::metrics::{evaluate, EvalReport};
use crate::{Error, Result};

/// Default lambda grid for sweeps.
pub const TABLE_LAMBDAS: [f64; 7] = [5.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub lambda: f64,
    pub train: EvalReport,
    pub test: EvalReport,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str = "lambda,test_picp,test_mpiw,train_picp,train_mpiw";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.6},{:.6},{:.6},{:.6}",
            self.lambda, self.test.picp, self.test.mpiw, self.train.picp, self.train.mpiw
        )
    }
}

/// Trains one ensemble per `lambda` (same seeds) and evaluates each on both
/// splits. Rows come back in `lambdas` order.
pub fn sweep_lambda(train: &Batch, test: &Batch, cfg: &EnsembleConfig, lambdas: &[f64]) -> Result<Vec<SweepRow>> {
    if lambdas.len() < 2 {
        return Err(Error::config("a lambda sweep needs at least two values"));
    }
    let seeds = cfg.member_seeds();
    lambdas
        .par_iter()
        .map(|&lambda| {
            let mut c = *cfg;
            c.train.loss_config.lambda = lambda;
            c.train.loss_config.validate()?;
            let (ens, _) = train_ensemble(train, &c, &seeds)?;
            Ok(SweepRow {
                lambda,
                train: evaluate(&ens, train, None)?,
                test: evaluate(&ens, test, None)?,
            })
        })
        .collect()
}

/// Aligned text table: lambda, test PICP, test MPIW.
pub fn render_table(rows: &[SweepRow]) -> String {
    let mut s = String::new();
    writeln!(s, "{:>8}  {:>7}  {:>7}", "lambda", "PICP", "MPIW").unwrap();
    for r in rows {
        writeln!(s, "{:>8}  {:>7.3}  {:>7.3}", r.lambda, r.test.picp, r.test.mpiw).unwrap();
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{split, toy_wave, NoiseScale};

    #[test]
    fn one_row_per_lambda_in_order() {
        let data = toy_wave(60, 1, (-3.0, 3.0), NoiseScale::Variance).unwrap();
        let (tr, te) = split(&data, 0.9, 0).unwrap();
        let mut cfg = EnsembleConfig {
            members: 2,
            hidden: 8,
            ..Default::default()
        };
        cfg.train.epochs = 5;
        cfg.train.batch_size = 20;
        let rows = sweep_lambda(&tr, &te, &cfg, &[30.0, 5.0]).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!((rows[0].lambda, rows[1].lambda), (30.0, 5.0));
        assert_eq!(rows[0].test.n, te.len());
        assert!(render_table(&rows).lines().count() == 3);
        assert!(sweep_lambda(&tr, &te, &cfg, &[5.0]).is_err());
    }
}
