//! `srmks` command-line tool.
//!
//! Exit codes: 0 success, 2 usage error, 3 I/O or parse error, 4 numeric
//! failure.

mod commands;
mod plot;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use srmks::format::float17;
use srmks::{KernelFamily, SdofScale};

#[derive(Parser)]
#[command(name = "srmks", version, about = "Kernel smoother selection by structural risk minimisation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a noisy impulse response and write the training set.
    Simulate(SimulateArgs),
    /// Fit one kernel smoother to a training set.
    Fit(FitArgs),
    /// Search the SE and/or SDOF structures for the smallest guaranteed risk.
    Select(SelectArgs),
    /// Run the repeated model-selection study.
    Experiment(ExperimentArgs),
    /// Render SVG figures from an experiment's records.
    Plot(PlotArgs),
}

#[derive(Args, Serialize)]
pub struct SimulateArgs {
    /// Mass.
    #[arg(long, default_value_t = 1.0)]
    #[serde(with = "float17")]
    pub m: f64,
    /// Damping coefficient.
    #[arg(long, default_value_t = 20.0)]
    #[serde(with = "float17")]
    pub c: f64,
    /// Stiffness.
    #[arg(long, default_value_t = 1e6)]
    #[serde(with = "float17")]
    pub k: f64,
    /// Start of the sampling window in seconds.
    #[arg(long, default_value_t = 0.0)]
    #[serde(with = "float17")]
    pub t_start: f64,
    /// End of the sampling window in seconds.
    #[arg(long, default_value_t = 0.3)]
    #[serde(with = "float17")]
    pub t_end: f64,
    /// Points on the base grid.
    #[arg(long, default_value_t = 1001)]
    pub base_points: usize,
    /// Keep every `decimation`-th base-grid point.
    #[arg(long, default_value_t = 16)]
    pub decimation: usize,
    /// Signal-to-noise power ratio.
    #[arg(long, default_value_t = 10.0)]
    #[serde(with = "float17")]
    pub snr: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output directory.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Serialize)]
pub struct FitArgs {
    /// Training set JSON written by `simulate`.
    #[arg(long)]
    pub data: PathBuf,
    /// Kernel JSON, e.g. {"family":"se","sigma_f":1e-3,"length_scale":0.01}.
    #[arg(long)]
    pub kernel: PathBuf,
    /// Noise level; defaults to the training set's.
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub sigma_n: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyChoice {
    Se,
    Sdof,
    Both,
}

impl FamilyChoice {
    pub fn families(self) -> Vec<KernelFamily> {
        match self {
            FamilyChoice::Se => vec![KernelFamily::Se],
            FamilyChoice::Sdof => vec![KernelFamily::Sdof],
            FamilyChoice::Both => KernelFamily::ALL.to_vec(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScaleChoice {
    Marginal,
    Raw,
}

impl From<ScaleChoice> for SdofScale {
    fn from(s: ScaleChoice) -> Self {
        match s {
            ScaleChoice::Marginal => SdofScale::Marginal,
            ScaleChoice::Raw => SdofScale::Raw,
        }
    }
}

#[derive(Args, Serialize)]
pub struct SelectArgs {
    /// Training set JSON written by `simulate`.
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value_t = FamilyChoice::Both)]
    pub family: FamilyChoice,
    /// Number of SE signal scales.
    #[arg(long, default_value_t = 10)]
    pub se_n_sigma: usize,
    /// Number of SE length scales.
    #[arg(long, default_value_t = 30)]
    pub se_n_l: usize,
    /// Number of SDOF signal scales.
    #[arg(long, default_value_t = 30)]
    pub sdof_n_sigma: usize,
    /// Lower signal-scale factor, times RMS(y).
    #[arg(long, default_value_t = 0.1)]
    #[serde(with = "float17")]
    pub sigma_f_lo: f64,
    /// Upper signal-scale factor, times RMS(y).
    #[arg(long, default_value_t = 10.0)]
    #[serde(with = "float17")]
    pub sigma_f_hi: f64,
    /// Smallest SE length scale; defaults to the smallest sample gap.
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub l_min: Option<f64>,
    /// Largest SE length scale; defaults to the sample span.
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub l_max: Option<f64>,
    /// What the SDOF signal-scale factors multiply.
    #[arg(long, value_enum, default_value_t = ScaleChoice::Marginal)]
    pub sdof_scale: ScaleChoice,
    /// Oscillator mass for the SDOF kernel; defaults to the training set's.
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub m: Option<f64>,
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub c: Option<f64>,
    #[arg(long)]
    #[serde(with = "float17::opt")]
    pub k: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Serialize)]
pub struct ExperimentArgs {
    /// Experiment configuration JSON; missing fields take default values.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Overrides the configured repetitions.
    #[arg(long)]
    pub reps: Option<usize>,
    /// Overrides the configured base seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PlotKind {
    Boxplot,
    Predictions,
    Complexity,
}

#[derive(Args, Serialize)]
pub struct PlotArgs {
    /// records.csv written by `experiment`.
    #[arg(long)]
    pub records: PathBuf,
    #[arg(long, value_enum)]
    pub kind: PlotKind,
    /// Experiment configuration for `predictions`; defaults to the
    /// config.json next to the records file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Sample size for `predictions`; defaults to the largest.
    #[arg(long)]
    pub n: Option<usize>,
    /// Iteration for `predictions`.
    #[arg(long, default_value_t = 0)]
    pub iteration: usize,
    #[arg(long)]
    pub out: PathBuf,
}

/// A failure with its exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Io(String),
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Io(_) => 3,
            Failure::Numeric(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Io(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<srmks::Error> for Failure {
    fn from(e: srmks::Error) -> Self {
        use srmks::Error as E;
        let msg = e.to_string();
        if e.is_numeric() {
            return Failure::Numeric(msg);
        }
        match e {
            E::Io(_) | E::Json(_) | E::Csv(_) | E::Parse(_) => Failure::Io(msg),
            _ => Failure::Usage(msg),
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("SRMKS_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Failure::Usage(format!("SRMKS_THREADS must be a positive integer (got {raw:?})")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::Usage(format!("cannot size the worker pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Fit(a) => commands::fit(a),
        Command::Select(a) => commands::select(a),
        Command::Experiment(a) => commands::experiment(a),
        Command::Plot(a) => commands::plot(a),
    });
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
