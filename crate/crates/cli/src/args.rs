use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "coning", version, about = "Bit streams from iterated cones and simplex duals, and the tests that judge them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build an f-vector (or its h-vector) from a construction.
    Generate(GenerateArgs),
    /// Convert between f- and h-vectors.
    Convert(ConvertArgs),
    /// Check Dehn–Sommerville and McMullen's conditions on a vector.
    Certify(CertifyArgs),
    /// Encode a vector file as a bit stream.
    Encode(EncodeArgs),
    /// Run the statistical suite on a bit stream.
    Test(TestArgs),
    /// Run a configured sweep and write its output tree.
    Experiment(ExperimentArgs),
    /// Re-aggregate the reports of an experiment directory.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    SimplexDual,
    Pattern,
    RandomGraph,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VectorKind {
    F,
    H,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum)]
    pub construction: Construction,
    /// h-vector length (simplex-dual, pattern).
    #[arg(long)]
    pub length: Option<u64>,
    /// Non-end h value c (pattern).
    #[arg(long)]
    pub pattern_value: Option<u64>,
    /// Vertex count (random-graph).
    #[arg(long)]
    pub graph_n: Option<u32>,
    /// Edge probability as a/b or a decimal (random-graph).
    #[arg(long)]
    pub graph_p: Option<String>,
    /// Generator seed (random-graph).
    #[arg(long)]
    pub seed: Option<u64>,
    /// Number of cones applied to the complex.
    #[arg(long, default_value_t = 0)]
    pub cones: u64,
    /// Which vector to write.
    #[arg(long, value_enum, default_value_t = VectorKind::F)]
    pub vector: VectorKind,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    F2h,
    H2f,
}

#[derive(Debug, Args)]
pub struct ConvertArgs {
    #[arg(long, value_enum)]
    pub direction: Direction,
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// An f-vector of a complex, or an h-vector.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Polytope dimension; defaults to the f-vector's component count.
    #[arg(long)]
    pub dimension: Option<usize>,
    /// Certificate path; defaults to `<in>.certificate.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit 3 when McMullen's conditions fail.
    #[arg(long)]
    pub strict: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Raw,
    Ascii,
}

impl From<Format> for coning_core::StreamFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Raw => coning_core::StreamFormat::Raw,
            Format::Ascii => coning_core::StreamFormat::Ascii,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Bitwise,
    ByteAligned,
}

impl From<Mode> for coning_core::EncodingMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Bitwise => coning_core::EncodingMode::Bitwise,
            Mode::ByteAligned => coning_core::EncodingMode::ByteAligned,
        }
    }
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Mode::Bitwise)]
    pub mode: Mode,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    #[arg(long, default_value_t = 0.01)]
    pub alpha: f64,
    #[arg(long, default_value_t = 128)]
    pub block_frequency_m: usize,
    #[arg(long, default_value_t = 10)]
    pub approx_entropy_m: usize,
    #[arg(long, default_value_t = 16)]
    pub serial_m: usize,
    #[arg(long, default_value_t = 500)]
    pub linear_complexity_m: usize,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Raw)]
    pub format: Format,
    #[command(flatten)]
    pub suite: SuiteArgs,
    /// Report path; defaults to `<in>.report.json`.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Minimum pass proportion for exit code 0.
    #[arg(long, default_value_t = 0.94)]
    pub threshold: f64,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Use the full-scale sizes (about 10^7 bits per stream) instead of the configured ones.
    #[arg(long)]
    pub full: bool,
    /// Output root; overrides `output_dir` in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exit 3 when any stream falls below `--threshold` or the table clusters.
    #[arg(long)]
    pub strict: bool,
    #[arg(long, default_value_t = 0.94)]
    pub threshold: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LayoutArg {
    ScatterCsv,
    SparklineCsv,
    Json,
}

impl From<LayoutArg> for coning_experiments::Layout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::ScatterCsv => coning_experiments::Layout::ScatterCsv,
            LayoutArg::SparklineCsv => coning_experiments::Layout::SparklineCsv,
            LayoutArg::Json => coning_experiments::Layout::Json,
        }
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// An experiment directory, e.g. `out/length_sweep`.
    #[arg(long)]
    pub dir: PathBuf,
    #[arg(long, value_enum)]
    pub layout: LayoutArg,
    /// Defaults to the layout's standard file name inside `--dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
