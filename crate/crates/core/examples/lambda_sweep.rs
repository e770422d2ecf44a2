//! Sweeps the coverage weight over the standard grid on one split and prints
//! the coverage/width table.
//!
//! cargo run --release --example lambda_sweep -- [profile.toml] [epochs]

use ubpi::data::DatasetProfile;
use ubpi::ensemble::EnsembleConfig;
use ubpi::experiment::standardized_split;
use ubpi::trainer::{render_table, sweep_lambda, TABLE_LAMBDAS};

fn main() -> ubpi::Result<()> {
    let mut args = std::env::args().skip(1);
    let profile_path = args
        .next()
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/diabetes200.toml").into());
    let epochs: usize = args.next().map_or(2000, |s| s.parse().expect("epochs"));

    let profile = DatasetProfile::load(&profile_path)?;
    let split = standardized_split(&profile.load_data()?, 0.9, 0)?;
    let mut cfg = EnsembleConfig {
        hidden: profile.hidden_units(),
        ..Default::default()
    };
    cfg.train.epochs = epochs;
    let rows = sweep_lambda(&split.train, &split.test, &cfg, &TABLE_LAMBDAS)?;
    print!("{}", render_table(&rows));
    Ok(())
}
