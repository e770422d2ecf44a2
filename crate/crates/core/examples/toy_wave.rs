//! Fits a five-member ensemble to the noisy wave, reports coverage and width
//! relative to the target range, and writes the band plot.
//!
//! cargo run --release --example toy_wave -- [seed] [out.svg]

use std::time::Instant;

use ubpi::data::{toy_wave, NoiseScale};
use ubpi::ensemble::EnsembleConfig;
use ubpi::experiment::{interval_band, run_toy};
use ubpi::plot::interval_band_svg;

fn main() -> ubpi::Result<()> {
    let mut args = std::env::args().skip(1);
    let seed: u64 = args.next().map_or(0, |s| s.parse().expect("seed"));
    let out = args.next().unwrap_or_else(|| "toy_wave.svg".into());

    let data = toy_wave(100, seed, (-5.0, 5.0), NoiseScale::Variance)?;
    let mut cfg = EnsembleConfig::toy();
    cfg.train.seed = seed;

    let t = Instant::now();
    let run = run_toy(&data, &cfg)?;
    let range = data.target_range();
    println!("{}", run.report.to_kv());
    println!("target_range = {range:.6}");
    println!("mpiw / range = {:.4}", run.report.mpiw / range);
    println!("elapsed = {:.2?}", t.elapsed());

    let (grid, band) = interval_band(&run.ensemble, (-5.0, 5.0), 200)?;
    let points: Vec<(f64, f64)> = (0..data.len()).map(|i| (data.row(i)[0], data.targets()[i])).collect();
    let svg = interval_band_svg(&points, &grid, &band, "wave: 95% intervals")?;
    std::fs::write(&out, svg).map_err(|e| ubpi::Error::Io {
        path: out.clone(),
        source: e,
    })?;
    println!("wrote {out}");
    Ok(())
}
