//! Trains on the diabetes fixture, round-trips the ensemble through a
//! snapshot directory, and plots intervals for the first test samples in
//! original target units.
//!
//! cargo run --release --example plot_intervals -- [out.svg] [epochs]

use ubpi::data::DatasetProfile;
use ubpi::ensemble::{EnsembleConfig, EnsembleSnapshot};
use ubpi::experiment::{run_benchmark, standardized_split};
use ubpi::model::IntervalPredictor;
use ubpi::plot::test_samples_svg;

fn main() -> ubpi::Result<()> {
    let mut args = std::env::args().skip(1);
    let out = args.next().unwrap_or_else(|| "test_intervals.svg".into());
    let epochs: usize = args.next().map_or(2000, |s| s.parse().expect("epochs"));

    let profile = DatasetProfile::load(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/diabetes200.toml"))?;
    let split = standardized_split(&profile.load_data()?, 0.9, 0)?;
    let mut cfg = EnsembleConfig::default();
    cfg.train.epochs = epochs;
    let run = run_benchmark(&split, &cfg)?;

    let dir = std::env::temp_dir().join("ubpi-plot-intervals");
    let snapshot = EnsembleSnapshot {
        ensemble: run.ensemble,
        config: cfg,
        standardizer: Some(split.standardizer.clone()),
        split: None,
    };
    snapshot.save(&dir)?;
    let restored = EnsembleSnapshot::load(&dir)?;
    assert_eq!(restored.ensemble, snapshot.ensemble);

    let st = &split.standardizer;
    let ivs: Vec<_> = restored
        .ensemble
        .predict(&split.test)?
        .into_iter()
        .map(|iv| st.invert_interval(iv))
        .collect();
    let ys: Vec<f64> = split.test.targets().iter().map(|&y| st.invert_target(y)).collect();
    let svg = test_samples_svg(0, &ys, &ivs, "diabetes200: test intervals")?;
    std::fs::write(&out, svg).map_err(|e| ubpi::Error::Io {
        path: out.clone(),
        source: e,
    })?;
    println!("snapshot in {}\nwrote {out}", dir.display());
    Ok(())
}
