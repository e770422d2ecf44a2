//! Loads a dataset profile, standardizes a 90/10 split on training
//! statistics, and trains both the hybrid-loss ensemble and the pinball
//! quantile baseline on it.
//!
//! cargo run --release --example benchmark_csv -- [profile.toml] [epochs]
//!
//! Defaults to the bundled 200-row diabetes fixture.

use ubpi::data::DatasetProfile;
use ubpi::ensemble::EnsembleConfig;
use ubpi::experiment::{run_benchmark, standardized_split};
use ubpi::losses::LossKind;

fn main() -> ubpi::Result<()> {
    let mut args = std::env::args().skip(1);
    let profile_path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/diabetes200.toml").into());
    let epochs: usize = args.next().map_or(2000, |s| s.parse().expect("epochs"));

    let profile = DatasetProfile::load(&profile_path)?;
    let loaded = profile.load_data()?;
    println!(
        "{}: {} rows, {} features, target '{}'",
        profile.name,
        loaded.batch.len(),
        loaded.batch.dim(),
        loaded.target_name
    );
    let split = standardized_split(&loaded, 0.9, 0)?;

    for loss in [LossKind::Ubpi, LossKind::Pinball] {
        let mut cfg = EnsembleConfig {
            hidden: profile.hidden_units(),
            ..Default::default()
        };
        cfg.train.loss = loss;
        cfg.train.epochs = epochs;
        let run = run_benchmark(&split, &cfg)?;
        println!("\n[{} test]\n{}", loss.name(), run.test.to_kv());
    }
    Ok(())
}
