//! Trains on heteroscedastic data with no samples in `[-1, 1]` and prints the
//! ensemble's epistemic variance across x. The variance should rise inside
//! the gap, where members are extrapolating.
//!
//! cargo run --release --example epistemic_gap -- [seed]

use ubpi::data::toy_heteroscedastic;
use ubpi::ensemble::EnsembleConfig;
use ubpi::experiment::run_toy;

fn main() -> ubpi::Result<()> {
    let seed: u64 = std::env::args().nth(1).map_or(0, |s| s.parse().expect("seed"));
    let data = toy_heteroscedastic(100, seed, (-4.0, 4.0), Some((-1.0, 1.0)))?;
    let mut cfg = EnsembleConfig::toy();
    cfg.train.seed = seed * 10;
    let run = run_toy(&data, &cfg)?;

    let xs: Vec<f64> = (0..=16).map(|i| -4.0 + 0.5 * i as f64).collect();
    let agg = run.ensemble.aggregate_features(&xs)?;
    println!("{:>6}  {:>9}  {:>9}  {:>10}", "x", "lower", "upper", "epistemic");
    for (x, a) in xs.iter().zip(&agg) {
        let mark = if x.abs() < 1.0 { "  gap" } else { "" };
        println!(
            "{x:>6.2}  {:>9.4}  {:>9.4}  {:>10.5}{mark}",
            a.interval.lower,
            a.interval.upper,
            a.epistemic()
        );
    }
    let at = |x: f64| agg[xs.iter().position(|&v| v == x).unwrap()].epistemic();
    println!(
        "\nepistemic(0) / mean(epistemic(-2), epistemic(2)) = {:.3}",
        at(0.0) / (0.5 * (at(-2.0) + at(2.0)))
    );
    Ok(())
}
