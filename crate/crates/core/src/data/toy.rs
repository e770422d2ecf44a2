use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{Batch, DataError};

pub const HETERO_AMPLITUDE: f64 = 1.5;

/// How the `0.1` in the wave generator's `N(0, 0.1)` noise is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NoiseScale {
    /// 0.1 is the variance: noise std is `sqrt(0.1)`.
    #[default]
    Variance,
    /// 0.1 is the standard deviation.
    StdDev,
}

impl NoiseScale {
    pub fn wave_std(self) -> f64 {
        match self {
            NoiseScale::Variance => 0.1f64.sqrt(),
            NoiseScale::StdDev => 0.1,
        }
    }
}

/// Noiseless part of the wave toy: `2cos(0.2x) + 0.2cos(10x) + 0.7cos(20x)`.
pub fn wave_mean(x: f64) -> f64 {
    2.0 * (0.2 * x).cos() + 0.2 * (10.0 * x).cos() + 0.7 * (20.0 * x).cos()
}

fn check_range(n: usize, (lo, hi): (f64, f64)) -> Result<(), DataError> {
    if n == 0 {
        return Err(DataError::Empty);
    }
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(DataError::InvalidArgument(format!("empty x range [{lo}, {hi}]")));
    }
    Ok(())
}

/// `n` points with x uniform on `x_range` and `y = wave_mean(x) + noise`.
pub fn toy_wave(n: usize, seed: u64, x_range: (f64, f64), noise: NoiseScale) -> Result<Batch, DataError> {
    check_range(n, x_range)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, noise.wave_std()).expect("positive std");
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let x = rng.random_range(x_range.0..x_range.1);
        xs.push(x);
        ys.push(wave_mean(x) + normal.sample(&mut rng));
    }
    Batch::from_xy(xs, ys)
}

// noise std is |x|, i.e. variance x²
fn hetero_response(x: f64, standard_normal: f64) -> f64 {
    HETERO_AMPLITUDE * x.sin() + standard_normal * x.abs()
}

/// `y = 1.5 sin(x) + ε`, `ε ~ N(0, x²)`. With `gap = Some((a, b))` no x is
/// drawn from the closed interval `[a, b]`.
pub fn toy_heteroscedastic(
    n: usize,
    seed: u64,
    x_range: (f64, f64),
    gap: Option<(f64, f64)>,
) -> Result<Batch, DataError> {
    check_range(n, x_range)?;
    let (lo, hi) = x_range;
    let (left, right) = match gap {
        None => ((lo, hi), (hi, hi)),
        Some((a, b)) => {
            if !(a <= b) {
                return Err(DataError::InvalidArgument(format!("gap [{a}, {b}] is reversed")));
            }
            ((lo, a.clamp(lo, hi)), (b.clamp(lo, hi), hi))
        }
    };
    let len_left = left.1 - left.0;
    let len_right = right.1 - right.0;
    let total = len_left + len_right;
    if total <= 0.0 {
        return Err(DataError::InvalidArgument("gap covers the whole x range".into()));
    }
    let in_gap = |x: f64| gap.is_some_and(|(a, b)| x >= a && x <= b);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    while xs.len() < n {
        let u = rng.random_range(0.0..total);
        let x = if u < len_left {
            left.0 + u
        } else {
            right.0 + (u - len_left)
        };
        if in_gap(x) {
            continue;
        }
        let z: f64 = rng.sample(rand_distr::StandardNormal);
        xs.push(x);
        ys.push(hetero_response(x, z));
    }
    Batch::from_xy(xs, ys)
}
