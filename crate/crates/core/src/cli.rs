//! The `ubpi` command line: toy demos, benchmark training, lambda sweeps and
//! test-sample plots.
//!
//! Every command prints its effective configuration before doing any work,
//! so a run can be repeated from its log alone. Exit status is 0 on success,
//! 1 on a runtime failure and 2 on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::data::{toy_heteroscedastic, toy_wave, Batch, DatasetProfile, NoiseScale};
use crate::ensemble::{EnsembleConfig, EnsembleSnapshot, SplitInfo, Widening};
use crate::experiment::{interval_band, run_benchmark, run_toy, standardized_split};
use crate::losses::LossKind;
use crate::metrics::EvalReport;
use crate::model::IntervalPredictor;
use crate::plot::{interval_band_svg, test_samples_svg};
use crate::trainer::{render_table, sweep_lambda, OptimizerKind, SweepRow, TrainConfig, TrainTrace, TABLE_LAMBDAS};
use crate::{Error, Result};

pub const OUT_DIR_ENV: &str = "UBPI_OUT_DIR";
pub const DEFAULT_OUT_DIR: &str = "ubpi-out";
pub const SNAPSHOT_DIR: &str = "snapshot";
const BAND_POINTS: usize = 200;

#[derive(Debug, Parser)]
#[command(
    name = "ubpi",
    version,
    about = "Prediction intervals from hybrid-loss network ensembles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fit an ensemble to a synthetic one-dimensional dataset and plot its band.
    Toy(ToyArgs),
    /// Train an ensemble on a CSV dataset and report test-split coverage and width.
    Train(TrainArgs),
    /// Train one ensemble per lambda and tabulate coverage against width.
    Sweep(SweepArgs),
    /// Plot a saved ensemble's intervals over a range of test samples.
    Plot(PlotArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ToyKind {
    Wave,
    Heteroscedastic,
}

impl ToyKind {
    fn name(self) -> &'static str {
        match self {
            ToyKind::Wave => "wave",
            ToyKind::Heteroscedastic => "heteroscedastic",
        }
    }

    fn default_range(self) -> (f64, f64) {
        match self {
            ToyKind::Wave => (-5.0, 5.0),
            ToyKind::Heteroscedastic => (-4.0, 4.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NoiseArg {
    /// The wave generator's 0.1 is a variance.
    Variance,
    /// The wave generator's 0.1 is a standard deviation.
    Std,
}

/// Training options shared by every command that fits an ensemble.
#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// TOML ensemble configuration; flags given on the command line override it.
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Target coverage level P_c.
    #[arg(long, value_name = "P")]
    pub pc: Option<f64>,
    /// Weight of the coverage penalty.
    #[arg(long)]
    pub lambda: Option<f64>,
    /// Sharpness of the soft coverage indicator.
    #[arg(long)]
    pub soften: Option<f64>,
    /// Number of ensemble members.
    #[arg(long, value_name = "M")]
    pub ensemble: Option<usize>,
    /// Hidden units per member.
    #[arg(long)]
    pub hidden: Option<usize>,
    /// Base seed; member j uses seed + j.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub epochs: Option<usize>,
    /// Learning rate.
    #[arg(long)]
    pub lr: Option<f64>,
    /// Mini-batch size.
    #[arg(long)]
    pub batch: Option<usize>,
    #[arg(long, value_enum)]
    pub loss: Option<LossKind>,
    #[arg(long, value_enum)]
    pub optimizer: Option<OptimizerKind>,
    /// Gradient L2 clip threshold.
    #[arg(long)]
    pub clip: Option<f64>,
    /// What the cross-member spread adds to the mean bounds.
    #[arg(long, value_enum)]
    pub widening: Option<Widening>,
    /// Output directory.
    #[arg(long, value_name = "DIR", env = OUT_DIR_ENV, default_value = DEFAULT_OUT_DIR)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct ToyArgs {
    #[arg(value_enum)]
    pub which: ToyKind,
    /// Number of generated points.
    #[arg(long, default_value_t = 100)]
    pub n: usize,
    /// x range as lo:hi (wave default -5:5, heteroscedastic -4:4).
    #[arg(long, value_name = "LO:HI", value_parser = parse_span, allow_hyphen_values = true)]
    pub range: Option<(f64, f64)>,
    /// Excluded x interval as lo:hi (heteroscedastic only).
    #[arg(long, value_name = "LO:HI", value_parser = parse_span, allow_hyphen_values = true)]
    pub gap: Option<(f64, f64)>,
    /// Reading of the wave generator's noise scale.
    #[arg(long, value_enum, default_value_t = NoiseArg::Variance)]
    pub noise: NoiseArg,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// Dataset profile (TOML) naming the CSV, target and dropped columns.
    #[arg(long, value_name = "FILE")]
    pub profile: PathBuf,
    /// Fraction of rows used for training.
    #[arg(long, default_value_t = 0.9)]
    pub train_fraction: f64,
    /// Seed of the train/test partition (defaults to the training seed).
    #[arg(long)]
    pub split_seed: Option<u64>,
}

#[derive(Debug, Clone, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: DataArgs,
    /// Comma-separated lambda values.
    #[arg(long, value_delimiter = ',', default_values_t = TABLE_LAMBDAS.to_vec())]
    pub lambdas: Vec<f64>,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args)]
pub struct PlotArgs {
    /// Snapshot directory written by `train`.
    #[arg(long, value_name = "DIR")]
    pub snapshot: PathBuf,
    /// Dataset profile; defaults to the one recorded in the snapshot.
    #[arg(long, value_name = "FILE")]
    pub profile: Option<PathBuf>,
    /// Test-sample index range as start:end (end exclusive).
    #[arg(long, value_name = "START:END", value_parser = parse_index_range)]
    pub range: (usize, usize),
    /// Output SVG file.
    #[arg(long, value_name = "FILE")]
    pub out: PathBuf,
}

fn parse_span(s: &str) -> std::result::Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected LO:HI, got '{s}'"))?;
    let lo: f64 = a.trim().parse().map_err(|_| format!("'{a}' is not a number"))?;
    let hi: f64 = b.trim().parse().map_err(|_| format!("'{b}' is not a number"))?;
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(format!("need finite LO < HI, got {lo}:{hi}"));
    }
    Ok((lo, hi))
}

fn parse_index_range(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| format!("expected START:END, got '{s}'"))?;
    let start: usize = a.trim().parse().map_err(|_| format!("'{a}' is not an index"))?;
    let end: usize = b.trim().parse().map_err(|_| format!("'{b}' is not an index"))?;
    Ok((start, end))
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

impl From<crate::data::DataError> for Failure {
    fn from(e: crate::data::DataError) -> Self {
        Failure::Run(e.into())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Parses `args` (including the program name) and runs the command. Returns
/// the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let outcome = match &cli.command {
        Command::Toy(a) => cmd_toy(a),
        Command::Train(a) => cmd_train(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Plot(a) => cmd_plot(a),
    };
    match outcome {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(Failure::Run(e)) => {
            let mut msg = format!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                write!(msg, "\n  caused by: {s}").unwrap();
                src = s.source();
            }
            eprintln!("{msg}");
            1
        }
    }
}

// Overlays `over` onto `base`, recursing into nested tables.
fn merge(base: &mut toml::Table, over: toml::Table) {
    for (k, v) in over {
        match (base.get_mut(&k), v) {
            (Some(toml::Value::Table(b)), toml::Value::Table(o)) => merge(b, o),
            (_, v) => {
                base.insert(k, v);
            }
        }
    }
}

impl ModelArgs {
    /// Command defaults, then the config file, then explicit flags.
    pub fn resolve(&self, epochs: usize, hidden: usize) -> Result<EnsembleConfig> {
        let mut cfg = EnsembleConfig {
            hidden,
            train: TrainConfig {
                epochs,
                ..TrainConfig::default()
            },
            ..EnsembleConfig::default()
        };
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
            let over: toml::Table =
                toml::from_str(&text).map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
            let mut base = toml::Table::try_from(cfg).map_err(|e| Error::config(e.to_string()))?;
            merge(&mut base, over);
            cfg = base
                .try_into()
                .map_err(|e| Error::config(format!("{}: {e}", path.display())))?;
        }
        let t = &mut cfg.train;
        let l = &mut t.loss_config;
        l.confidence = self.pc.unwrap_or(l.confidence);
        l.lambda = self.lambda.unwrap_or(l.lambda);
        l.soften = self.soften.unwrap_or(l.soften);
        t.seed = self.seed.unwrap_or(t.seed);
        t.epochs = self.epochs.unwrap_or(t.epochs);
        t.learning_rate = self.lr.unwrap_or(t.learning_rate);
        t.batch_size = self.batch.unwrap_or(t.batch_size);
        t.loss = self.loss.unwrap_or(t.loss);
        t.optimizer = self.optimizer.unwrap_or(t.optimizer);
        t.clip_norm = self.clip.unwrap_or(t.clip_norm);
        cfg.members = self.ensemble.unwrap_or(cfg.members);
        cfg.hidden = self.hidden.unwrap_or(cfg.hidden);
        cfg.widening = self.widening.unwrap_or(cfg.widening);
        if cfg.members == 0 {
            return Err(Error::config("ensemble needs at least one member"));
        }
        cfg.train.loss_config.validate()?;
        Ok(cfg)
    }
}

/// Effective-configuration block printed at startup and saved in reports.
fn echo(command: &str, extra: &[(&str, String)], cfg: &EnsembleConfig) -> String {
    let mut s = format!("# ubpi {command}\n");
    for (k, v) in extra {
        writeln!(s, "{k} = {v}").unwrap();
    }
    s.push('\n');
    s.push_str(&toml::to_string(cfg).expect("config serializes"));
    s
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::io(path, e))?;
    println!("wrote {}", path.display());
    Ok(())
}

fn write_traces(dir: &Path, traces: &[TrainTrace]) -> Result<()> {
    for (j, t) in traces.iter().enumerate() {
        write_file(&dir.join(format!("trace_member_{j:02}.csv")), &t.to_csv())?;
    }
    Ok(())
}

fn report_csv(rows: &[(&str, &EvalReport)]) -> String {
    let mut s = format!("split,{}\n", EvalReport::CSV_HEADER);
    for (name, r) in rows {
        writeln!(s, "{name},{}", r.csv_row()).unwrap();
    }
    s
}

fn cmd_toy(a: &ToyArgs) -> CliResult<()> {
    if a.gap.is_some() && a.which == ToyKind::Wave {
        return Err(Failure::Usage("--gap applies to the heteroscedastic toy only".into()));
    }
    let range = a.range.unwrap_or(a.which.default_range());
    let cfg = a.model.resolve(TrainConfig::TOY_EPOCHS, DatasetProfile::HIDDEN)?;
    let noise = match a.noise {
        NoiseArg::Variance => NoiseScale::Variance,
        NoiseArg::Std => NoiseScale::StdDev,
    };
    let fmt_span = |(lo, hi): (f64, f64)| format!("\"{lo}:{hi}\"");
    let mut extra = vec![
        ("toy", format!("\"{}\"", a.which.name())),
        ("n", a.n.to_string()),
        ("range", fmt_span(range)),
        ("out", format!("{:?}", a.model.out.display().to_string())),
    ];
    match a.which {
        ToyKind::Wave => extra.push(("noise", format!("\"{:?}\"", a.noise).to_lowercase())),
        ToyKind::Heteroscedastic => extra.push(("gap", a.gap.map(fmt_span).unwrap_or_else(|| "\"none\"".into()))),
    }
    let config_echo = echo("toy", &extra, &cfg);
    print!("{config_echo}");

    let seed = cfg.train.seed;
    let data = match a.which {
        ToyKind::Wave => toy_wave(a.n, seed, range, noise)?,
        ToyKind::Heteroscedastic => toy_heteroscedastic(a.n, seed, range, a.gap)?,
    };
    if cfg.train.batch_size > data.len() {
        return Err(Failure::Usage(format!(
            "--batch {} exceeds the {} generated points",
            cfg.train.batch_size,
            data.len()
        )));
    }
    let run = run_toy(&data, &cfg)?;
    let (grid, band) = interval_band(&run.ensemble, range, BAND_POINTS)?;
    let aggregates = run.ensemble.aggregate_features(&grid)?;
    let fitted = run.ensemble.predict(&data)?;

    let name = a.which.name();
    let points: Vec<(f64, f64)> = (0..data.len()).map(|i| (data.row(i)[0], data.targets()[i])).collect();
    let title = format!("{name}: {:.0}% intervals", cfg.train.loss_config.confidence * 100.0);
    let svg = interval_band_svg(&points, &grid, &band, &title)?;

    let mut pts = String::from("x,y,lower,upper\n");
    for ((x, y), iv) in points.iter().zip(&fitted) {
        writeln!(pts, "{x:?},{y:?},{:?},{:?}", iv.lower, iv.upper).unwrap();
    }
    let mut bnd = String::from("x,lower,upper,epistemic\n");
    for (x, ag) in grid.iter().zip(&aggregates) {
        writeln!(
            bnd,
            "{x:?},{:?},{:?},{:?}",
            ag.interval.lower,
            ag.interval.upper,
            ag.epistemic()
        )
        .unwrap();
    }
    println!("\n{}", run.report.to_kv());

    let out = &a.model.out;
    create_dir(out)?;
    write_file(&out.join(format!("toy_{name}.svg")), &svg)?;
    write_file(&out.join(format!("toy_{name}_points.csv")), &pts)?;
    write_file(&out.join(format!("toy_{name}_band.csv")), &bnd)?;
    write_file(
        &out.join("report.txt"),
        &format!("{config_echo}\n[train]\n{}", run.report.to_kv()),
    )?;
    write_file(&out.join("report.csv"), &report_csv(&[("train", &run.report)]))?;
    write_traces(out, &run.traces)?;
    Ok(())
}

fn load_profile(data: &DataArgs) -> CliResult<(DatasetProfile, crate::data::LoadedCsv)> {
    let profile = DatasetProfile::load(&data.profile)?;
    let loaded = profile.load_data()?;
    Ok((profile, loaded))
}

fn data_echo(data: &DataArgs, profile: &DatasetProfile, split_seed: u64, out: &Path) -> Vec<(&'static str, String)> {
    vec![
        ("profile", format!("{:?}", data.profile.display().to_string())),
        ("dataset", format!("{:?}", profile.name)),
        ("train_fraction", data.train_fraction.to_string()),
        ("split_seed", split_seed.to_string()),
        ("out", format!("{:?}", out.display().to_string())),
    ]
}

fn cmd_train(a: &TrainArgs) -> CliResult<()> {
    let (profile, loaded) = load_profile(&a.data)?;
    let cfg = a.model.resolve(TrainConfig::BENCHMARK_EPOCHS, profile.hidden_units())?;
    let split_seed = a.data.split_seed.unwrap_or(cfg.train.seed);
    let out = &a.model.out;
    let config_echo = echo("train", &data_echo(&a.data, &profile, split_seed, out), &cfg);
    print!("{config_echo}");

    let split = standardized_split(&loaded, a.data.train_fraction, split_seed)?;
    let run = run_benchmark(&split, &cfg)?;
    println!("\n[train]\n{}\n[test]\n{}", run.train.to_kv(), run.test.to_kv());

    let snapshot = EnsembleSnapshot {
        ensemble: run.ensemble,
        config: cfg,
        standardizer: Some(split.standardizer),
        split: Some(SplitInfo {
            profile: a.data.profile.display().to_string(),
            seed: split_seed,
            train_fraction: a.data.train_fraction,
        }),
    };
    create_dir(out)?;
    let snap_dir = out.join(SNAPSHOT_DIR);
    snapshot.save(&snap_dir)?;
    println!("wrote {}", snap_dir.display());
    write_file(
        &out.join("report.txt"),
        &format!(
            "{config_echo}\n[train]\n{}\n[test]\n{}",
            run.train.to_kv(),
            run.test.to_kv()
        ),
    )?;
    write_file(
        &out.join("report.csv"),
        &report_csv(&[("train", &run.train), ("test", &run.test)]),
    )?;
    write_traces(out, &run.traces)?;
    Ok(())
}

fn cmd_sweep(a: &SweepArgs) -> CliResult<()> {
    if a.lambdas.len() < 2 {
        return Err(Failure::Usage("--lambdas needs at least two values".into()));
    }
    let (profile, loaded) = load_profile(&a.data)?;
    let cfg = a.model.resolve(TrainConfig::BENCHMARK_EPOCHS, profile.hidden_units())?;
    let split_seed = a.data.split_seed.unwrap_or(cfg.train.seed);
    let out = &a.model.out;
    let mut extra = data_echo(&a.data, &profile, split_seed, out);
    let list: Vec<String> = a.lambdas.iter().map(|l| l.to_string()).collect();
    extra.push(("lambdas", format!("[{}]", list.join(", "))));
    print!("{}", echo("sweep", &extra, &cfg));

    let split = standardized_split(&loaded, a.data.train_fraction, split_seed)?;
    let rows = sweep_lambda(&split.train, &split.test, &cfg, &a.lambdas)?;
    let table = render_table(&rows);
    println!();
    print!("{table}");
    let mut csv = format!("{}\n", SweepRow::CSV_HEADER);
    for r in &rows {
        writeln!(csv, "{}", r.csv_row()).unwrap();
    }
    create_dir(out)?;
    write_file(&out.join("sweep.txt"), &table)?;
    write_file(&out.join("sweep.csv"), &csv)?;
    Ok(())
}

fn test_split_raw(snapshot: &EnsembleSnapshot, profile_path: &Path) -> Result<(Batch, Batch)> {
    let info = snapshot
        .split
        .as_ref()
        .ok_or_else(|| Error::Snapshot("snapshot records no dataset split".into()))?;
    let loaded = DatasetProfile::load(profile_path)?.load_data()?;
    let (_, test) = crate::data::split(&loaded.batch, info.train_fraction, info.seed)?;
    let standardized = match &snapshot.standardizer {
        Some(st) => st.apply(&test)?,
        None => test.clone(),
    };
    Ok((test, standardized))
}

fn cmd_plot(a: &PlotArgs) -> CliResult<()> {
    let snapshot = EnsembleSnapshot::load(&a.snapshot)?;
    let profile = match (&a.profile, &snapshot.split) {
        (Some(p), _) => p.clone(),
        (None, Some(info)) => PathBuf::from(&info.profile),
        (None, None) => return Err(Failure::Usage("snapshot records no profile; pass --profile".into())),
    };
    let (start, end) = a.range;
    let extra = [
        ("snapshot", format!("{:?}", a.snapshot.display().to_string())),
        ("profile", format!("{:?}", profile.display().to_string())),
        ("range", format!("\"{start}:{end}\"")),
        ("out", format!("{:?}", a.out.display().to_string())),
    ];
    print!("{}", echo("plot", &extra, &snapshot.config));

    let (raw, standardized) = test_split_raw(&snapshot, &profile)?;
    if start >= end || end > raw.len() {
        return Err(Failure::Run(Error::config(format!(
            "sample range {start}:{end} is empty or exceeds the {} test samples",
            raw.len()
        ))));
    }
    let idx: Vec<usize> = (start..end).collect();
    let ivs = snapshot.ensemble.predict(&standardized.subset(&idx)?)?;
    let ivs: Vec<_> = match &snapshot.standardizer {
        Some(st) => ivs.into_iter().map(|iv| st.invert_interval(iv)).collect(),
        None => ivs,
    };
    let ys: Vec<f64> = idx.iter().map(|&i| raw.targets()[i]).collect();
    let svg = test_samples_svg(start, &ys, &ivs, &format!("test samples {start}..{end}"))?;
    if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        create_dir(dir)?;
    }
    write_file(&a.out, &svg)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spans_parse() {
        assert_eq!(parse_span("-1:1"), Ok((-1.0, 1.0)));
        assert!(parse_span("1:-1").is_err());
        assert!(parse_span("1").is_err());
        assert_eq!(parse_index_range("0:50"), Ok((0, 50)));
        assert!(parse_index_range("a:5").is_err());
    }

    #[test]
    fn flags_override_config_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(
            &path,
            "members = 3\n[train]\nepochs = 7\n[train.loss_config]\nlambda = 40.0\n",
        )
        .unwrap();
        let cli = Cli::try_parse_from([
            "ubpi",
            "toy",
            "wave",
            "--config",
            path.to_str().unwrap(),
            "--lambda",
            "20",
        ])
        .unwrap();
        let Command::Toy(a) = cli.command else { panic!() };
        let cfg = a.model.resolve(800, 50).unwrap();
        assert_eq!(cfg.members, 3);
        assert_eq!(cfg.train.epochs, 7);
        assert_eq!(cfg.train.loss_config.lambda, 20.0);
        assert_eq!(cfg.train.loss_config.confidence, 0.95);
    }

    #[test]
    fn unknown_config_key_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.toml");
        std::fs::write(&path, "memberz = 3\n").unwrap();
        let args = ModelArgs {
            config: Some(path),
            pc: None,
            lambda: None,
            soften: None,
            ensemble: None,
            hidden: None,
            seed: None,
            epochs: None,
            lr: None,
            batch: None,
            loss: None,
            optimizer: None,
            clip: None,
            widening: None,
            out: PathBuf::from("x"),
        };
        assert!(matches!(args.resolve(800, 50), Err(Error::Config(_))));
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["ubpi", "toy", "circle"]), 2);
        assert_eq!(run(["ubpi", "sweep", "--profile", "p.toml", "--lambdas", "5,x"]), 2);
        assert_eq!(run(["ubpi", "toy", "wave", "--gap", "-1:1"]), 2);
    }
}
