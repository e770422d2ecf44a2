//! Two-output MLP: `input_dim → hidden (ReLU) → 2 (identity)`.
//!
//! Output 0 is the lower bound head, output 1 the upper bound head. The
//! heads are not constrained to be ordered; a crossed interval has negative
//! width and is surfaced through the crossing rate in evaluation reports.

mod snapshot;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autodiff::{Tape, Var};
use crate::data::Batch;
use crate::{Error, Result};

pub use snapshot::ModelSnapshot;

/// Initial output-bias offset: the lower head starts at `-δ₀`, the upper at `+δ₀`.
pub const OUTPUT_BIAS_OFFSET: f64 = 1.0;

/// A `(lower, upper)` bound pair. Ordering is not enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn new(lower: f64, upper: f64) -> Self {
        Interval { lower, upper }
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn midpoint(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }

    /// Closed-interval membership, `lower <= y <= upper`.
    pub fn contains(&self, y: f64) -> bool {
        self.lower <= y && y <= self.upper
    }

    pub fn is_crossed(&self) -> bool {
        self.upper < self.lower
    }

    pub fn is_finite(&self) -> bool {
        self.lower.is_finite() && self.upper.is_finite()
    }
}

/// Interval bounds living on a [`Tape`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntervalVar {
    pub lower: Var,
    pub upper: Var,
}

/// Anything that maps feature rows to intervals.
pub trait IntervalPredictor {
    fn input_dim(&self) -> usize;

    /// `features` is row-major with `input_dim()` columns.
    fn predict_features(&self, features: &[f64]) -> Result<Vec<Interval>>;

    fn predict(&self, batch: &Batch) -> Result<Vec<Interval>> {
        if batch.dim() != self.input_dim() {
            return Err(Error::Shape(format!(
                "model expects {} features, batch has {}",
                self.input_dim(),
                batch.dim()
            )));
        }
        self.predict_features(batch.features())
    }
}

/// Parameters of the two-output network, stored flat:
/// `w1` (`input_dim × hidden`, row-major), `b1` (`hidden`),
/// `w2` (`hidden × 2`, row-major), `b2` (`2`).
#[derive(Debug, Clone, PartialEq)]
pub struct Mlp {
    input_dim: usize,
    hidden: usize,
    params: Vec<f64>,
}

impl Mlp {
    pub fn param_count(input_dim: usize, hidden: usize) -> usize {
        input_dim * hidden + hidden + hidden * 2 + 2
    }

    /// Glorot-uniform weights, zero hidden biases, output biases `(-δ₀, +δ₀)`.
    pub fn init(input_dim: usize, hidden: usize, seed: u64) -> Result<Self> {
        let mut mlp = Mlp::zeros(input_dim, hidden)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let limit1 = (6.0 / (input_dim + hidden) as f64).sqrt();
        let limit2 = (6.0 / (hidden + 2) as f64).sqrt();
        let (w1_end, w2_start) = (mlp.b1_offset(), mlp.w2_offset());
        for p in &mut mlp.params[..w1_end] {
            *p = rng.random_range(-limit1..limit1);
        }
        for p in &mut mlp.params[w2_start..w2_start + hidden * 2] {
            *p = rng.random_range(-limit2..limit2);
        }
        Ok(mlp)
    }

    /// All weights zero, output biases `(-δ₀, +δ₀)`.
    pub fn zeros(input_dim: usize, hidden: usize) -> Result<Self> {
        if input_dim == 0 || hidden == 0 {
            return Err(Error::config(format!(
                "network dimensions must be positive (input {input_dim}, hidden {hidden})"
            )));
        }
        let mut mlp = Mlp {
            input_dim,
            hidden,
            params: vec![0.0; Self::param_count(input_dim, hidden)],
        };
        let b2 = mlp.b2_offset();
        mlp.params[b2] = -OUTPUT_BIAS_OFFSET;
        mlp.params[b2 + 1] = OUTPUT_BIAS_OFFSET;
        Ok(mlp)
    }

    pub fn from_params(input_dim: usize, hidden: usize, params: Vec<f64>) -> Result<Self> {
        if input_dim == 0 || hidden == 0 {
            return Err(Error::config("network dimensions must be positive"));
        }
        let want = Self::param_count(input_dim, hidden);
        if params.len() != want {
            return Err(Error::Shape(format!(
                "{} parameters given, {input_dim}x{hidden} network needs {want}",
                params.len()
            )));
        }
        Ok(Mlp {
            input_dim,
            hidden,
            params,
        })
    }

    pub fn hidden(&self) -> usize {
        self.hidden
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        &mut self.params
    }

    pub fn w1_shape(&self) -> (usize, usize) {
        (self.input_dim, self.hidden)
    }

    pub fn w2_shape(&self) -> (usize, usize) {
        (self.hidden, 2)
    }

    fn b1_offset(&self) -> usize {
        self.input_dim * self.hidden
    }

    fn w2_offset(&self) -> usize {
        self.b1_offset() + self.hidden
    }

    fn b2_offset(&self) -> usize {
        self.w2_offset() + self.hidden * 2
    }

    pub fn w1(&self) -> &[f64] {
        &self.params[..self.b1_offset()]
    }

    pub fn b1(&self) -> &[f64] {
        &self.params[self.b1_offset()..self.w2_offset()]
    }

    pub fn w2(&self) -> &[f64] {
        &self.params[self.w2_offset()..self.b2_offset()]
    }

    pub fn b2(&self) -> &[f64] {
        &self.params[self.b2_offset()..]
    }

    /// Index into `params()` of `w1[input, unit]`.
    pub fn w1_index(&self, input: usize, unit: usize) -> usize {
        input * self.hidden + unit
    }

    pub fn is_finite(&self) -> bool {
        self.params.iter().all(|p| p.is_finite())
    }

    /// Plain forward pass for one row. Summation order matches
    /// [`Mlp::forward_row`] so both paths agree bit for bit.
    pub fn predict_row(&self, row: &[f64]) -> Interval {
        let w1 = self.w1();
        let b1 = self.b1();
        let w2 = self.w2();
        let b2 = self.b2();
        let mut out = [b2[0], b2[1]];
        for j in 0..self.hidden {
            let mut a = b1[j];
            for (i, x) in row.iter().enumerate() {
                a += w1[i * self.hidden + j] * x;
            }
            let h = if a > 0.0 { a } else { 0.0 };
            out[0] += w2[j * 2] * h;
            out[1] += w2[j * 2 + 1] * h;
        }
        Interval::new(out[0], out[1])
    }

    /// Registers every parameter as a leaf, in `params()` order.
    pub fn bind(&self, tape: &mut Tape) -> Result<Vec<Var>> {
        self.params.iter().map(|&p| tape.leaf(p).map_err(Error::from)).collect()
    }

    /// Differentiable forward pass for one row using leaves from [`Mlp::bind`].
    pub fn forward_row(&self, tape: &mut Tape, vars: &[Var], row: &[f64]) -> IntervalVar {
        debug_assert_eq!(vars.len(), self.params.len());
        debug_assert_eq!(row.len(), self.input_dim);
        let h = self.hidden;
        let (b1, w2, b2) = (self.b1_offset(), self.w2_offset(), self.b2_offset());
        let mut hidden = Vec::with_capacity(h);
        for j in 0..h {
            let pre = tape.affine(vars[b1 + j], row.iter().enumerate().map(|(i, &x)| (vars[i * h + j], x)));
            hidden.push(tape.relu(pre));
        }
        let lower = tape.linear(
            vars[b2],
            hidden.iter().enumerate().map(|(j, &hv)| (vars[w2 + j * 2], hv)),
        );
        let upper = tape.linear(
            vars[b2 + 1],
            hidden.iter().enumerate().map(|(j, &hv)| (vars[w2 + j * 2 + 1], hv)),
        );
        IntervalVar { lower, upper }
    }

    /// Forward pass of a whole batch on the tape.
    pub fn forward(&self, tape: &mut Tape, vars: &[Var], batch: &Batch) -> Result<Vec<IntervalVar>> {
        if batch.dim() != self.input_dim {
            return Err(Error::Shape(format!(
                "model expects {} features, batch has {}",
                self.input_dim,
                batch.dim()
            )));
        }
        Ok(batch.rows().map(|r| self.forward_row(tape, vars, r)).collect())
    }
}

impl IntervalPredictor for Mlp {
    fn input_dim(&self) -> usize {
        self.input_dim
    }

    fn predict_features(&self, features: &[f64]) -> Result<Vec<Interval>> {
        if features.len() % self.input_dim != 0 {
            return Err(Error::Shape(format!(
                "{} feature values is not a multiple of {}",
                features.len(),
                self.input_dim
            )));
        }
        Ok(features
            .chunks_exact(self.input_dim)
            .map(|r| self.predict_row(r))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn init_is_seed_deterministic() {
        let a = Mlp::init(13, 50, 7).unwrap();
        let b = Mlp::init(13, 50, 7).unwrap();
        let c = Mlp::init(13, 50, 8).unwrap();
        assert_eq!(a, b);
        assert!(a.params().iter().zip(c.params()).any(|(x, y)| x != y));
    }

    #[test]
    fn init_shapes_and_bias_offsets() {
        let m = Mlp::init(13, 50, 1).unwrap();
        assert_eq!(m.w1_shape(), (13, 50));
        assert_eq!(m.w2_shape(), (50, 2));
        assert_eq!(m.w1().len(), 13 * 50);
        assert_eq!(m.w2().len(), 100);
        assert_eq!(m.b2(), &[-OUTPUT_BIAS_OFFSET, OUTPUT_BIAS_OFFSET]);
        assert!(m.b1().iter().all(|b| *b == 0.0));
        let limit = (6.0f64 / 63.0).sqrt();
        assert!(m.w1().iter().all(|w| w.abs() < limit));
    }

    #[test]
    fn zero_dims_rejected() {
        assert!(Mlp::init(0, 50, 1).is_err());
        assert!(Mlp::init(3, 0, 1).is_err());
    }

    #[test]
    fn zero_weights_emit_bias_interval() {
        let m = Mlp::zeros(3, 4).unwrap();
        let b = Batch::new(vec![1.0, -2.0, 3.0, 0.5, 0.5, 0.5], 3, vec![0.0, 0.0]).unwrap();
        for iv in m.predict(&b).unwrap() {
            assert_eq!(iv, Interval::new(-OUTPUT_BIAS_OFFSET, OUTPUT_BIAS_OFFSET));
        }
    }

    #[test]
    fn duplicate_rows_give_identical_intervals() {
        let m = Mlp::init(2, 8, 3).unwrap();
        let b = Batch::new(vec![0.3, -1.2, 0.3, -1.2], 2, vec![0.0, 0.0]).unwrap();
        let p = m.predict(&b).unwrap();
        assert_eq!(p[0], p[1]);
    }

    #[test]
    fn perturbing_a_hidden_weight_moves_the_output() {
        let mut m = Mlp::init(2, 8, 3).unwrap();
        let row = [0.7, -0.4];
        let before = m.predict_row(&row);
        // pick a unit that is active for this row so the change propagates
        let active = (0..8)
            .find(|&j| {
                let a = m.b1()[j] + m.w1()[j] * row[0] + m.w1()[8 + j] * row[1];
                a > 0.0
            })
            .expect("some unit active");
        let idx = m.w1_index(0, active);
        m.params_mut()[idx] += 0.1;
        let after = m.predict_row(&row);
        // expected change: Δw·x through the active unit into each head
        let w2 = m.w2();
        let dl = 0.1 * row[0] * w2[active * 2];
        let du = 0.1 * row[0] * w2[active * 2 + 1];
        assert!((after.lower - before.lower - dl).abs() < 1e-12);
        assert!((after.upper - before.upper - du).abs() < 1e-12);
        assert!(after != before);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let m = Mlp::init(3, 4, 0).unwrap();
        let b = Batch::new(vec![1.0, 2.0], 2, vec![0.0]).unwrap();
        assert!(matches!(m.predict(&b), Err(Error::Shape(_))));
    }

    #[test]
    fn tape_forward_matches_plain_forward() {
        let m = Mlp::init(3, 16, 11).unwrap();
        let b = Batch::new(vec![0.1, -0.5, 2.0, 1.0, 1.0, -1.0, -0.3, 0.0, 0.4], 3, vec![0.0; 3]).unwrap();
        let mut tape = Tape::new();
        let vars = m.bind(&mut tape).unwrap();
        let ivs = m.forward(&mut tape, &vars, &b).unwrap();
        let plain = m.predict(&b).unwrap();
        for (v, p) in ivs.iter().zip(&plain) {
            assert_eq!(tape.value(v.lower), p.lower);
            assert_eq!(tape.value(v.upper), p.upper);
        }
    }

    #[test]
    fn predict_is_pure() {
        let m = Mlp::init(1, 10, 2).unwrap();
        let b = Batch::from_xy(vec![-1.0, 0.0, 2.0], vec![0.0; 3]).unwrap();
        assert_eq!(m.predict(&b).unwrap(), m.predict(&b).unwrap());
    }

    #[test]
    fn midpoint_examples() {
        assert_eq!(Interval::new(0.0, 2.0).midpoint(), 1.0);
        assert_eq!(Interval::new(-1.0, 1.0).midpoint(), 0.0);
        assert!((Interval::new(1.16, 3.04).midpoint() - 2.10).abs() < 1e-12);
    }
}
