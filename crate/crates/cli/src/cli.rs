//! Command-line definitions.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "ccd", version, about = "Cluster catch digraph clustering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a CSV dataset and write a result file.
    Cluster(ClusterArgs),
    /// Monte Carlo success rate and Rand index over simulated datasets.
    Bench(BenchArgs),
    /// Build or verify a cached table of CSR envelopes.
    Envelope(EnvelopeArgs),
    /// Write a simulated dataset as CSV.
    Datagen(DatagenArgs),
    /// Plot-ready L(t) - t curve and envelopes of a 2-D dataset.
    Lcurve(LcurveArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Radii from Ripley's K envelope tests.
    Rk,
    /// Radii from the random-walk statistic with intensity --delta.
    Ks,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ShapeArg {
    Convex,
    Arbitrary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SearchArg {
    Binary,
    Linear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SilhouetteArg {
    GlobalMax,
    FirstLocalMax,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistArg {
    Uniform,
    Normal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SettingArg {
    Fixed,
    Strauss,
    StraussNoise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DatasetArg {
    Fixed,
    Strauss,
    StraussNoise,
    Moons,
    Circles,
    TwoBlobs,
}

/// Options shared by every command that clusters.
#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value = "rk")]
    pub mode: Mode,
    /// Intensity for --mode ks; not accepted with --mode rk.
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long, value_enum, default_value = "convex")]
    pub shape: ShapeArg,
    /// Monte Carlo replicates per envelope.
    #[arg(long, default_value_t = 99)]
    pub envelope_reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Label observations outside every selected ball as noise (-1).
    #[arg(long)]
    pub mark_noise: bool,
    #[arg(long, value_enum, default_value = "binary")]
    pub search: SearchArg,
    #[arg(long, value_enum, default_value = "global-max")]
    pub silhouette: SilhouetteArg,
}

#[derive(Debug, Clone, Args)]
pub struct ClusterArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Text result file; a `.json` sibling is written next to it. Printed
    /// to stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Envelope cache file (default: a file in $CCD_CACHE_DIR or .ccd-cache).
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "fixed")]
    pub setting: SettingArg,
    #[arg(long, value_enum, value_delimiter = ',', default_value = "uniform")]
    pub dist: Vec<DistArg>,
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    pub k: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "50")]
    pub n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_value = "2")]
    pub dim: Vec<usize>,
    #[arg(long, default_value_t = 25)]
    pub replicates: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Directory for envelope caches, one file per dimension.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Clone, Args)]
pub struct EnvelopeArgs {
    #[arg(long)]
    pub dim: usize,
    #[arg(long, default_value_t = 99)]
    pub envelope_reps: usize,
    /// Largest sample size to cover.
    #[arg(long)]
    pub m_max: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub cache: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DatagenArgs {
    #[arg(long, value_enum, default_value = "fixed")]
    pub setting: DatasetArg,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Points per cluster.
    #[arg(long, default_value_t = 50)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub dim: usize,
    #[arg(long, value_enum, default_value = "uniform")]
    pub dist: DistArg,
    #[arg(long, default_value_t = 0.3)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.15)]
    pub r: f64,
    /// Jitter for the moons and circles fixtures.
    #[arg(long, default_value_t = 0.05)]
    pub noise: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct LcurveArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 99)]
    pub envelope_reps: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}
