//! Command-line front end: argument definitions, presets and the commands
//! behind the `posauction` binary.

pub mod commands;
pub mod error;
pub mod output;
pub mod presets;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use error::{CliError, CliResult};
pub use output::{Format, Report};
pub use presets::Preset;

#[derive(Debug, Parser)]
#[command(
    name = "posauction",
    version,
    about = "Position auctions with misestimated position qualities"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Truthful VCG prices of each position.
    Payments(PaymentsArgs),
    /// Whether alpha-GSP and alpha-VCG support the truthful outcome.
    EqComplete(EqCompleteArgs),
    /// Feasibility over a (beta_2, alpha_2) grid.
    Region(RegionArgs),
    /// Derivatives of the candidate bidding functions.
    Curves(CurvesArgs),
    /// Tabulate a candidate bidding function.
    Bidfn(BidfnArgs),
    /// Monte-Carlo best-response check of a candidate bidding function.
    VerifyBne(VerifyBneArgs),
    /// Exact combinatorial identities and density reductions.
    Identities(IdentitiesArgs),
}

#[derive(Debug, Clone, Args)]
pub struct PaymentsArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// True position weights, e.g. `1,0.7,0.3`.
    #[arg(long)]
    pub beta: Option<String>,
    /// Agent values.
    #[arg(long)]
    pub values: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct EqCompleteArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// Estimated position weights used by the mechanisms.
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub values: Option<String>,
    /// Check this many random instances instead of one.
    #[arg(long, conflicts_with_all = ["alpha", "beta", "values", "preset"])]
    pub random: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 6)]
    pub max_k: usize,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Information {
    Complete,
    Incomplete,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    #[arg(long, value_enum, default_value = "complete")]
    pub info: Information,
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// `beta_2` grid: list `a,b,c` or range `lo:hi:step`.
    #[arg(long)]
    pub beta2: Option<String>,
    /// `alpha_2` grid: list `a,b,c` or range `lo:hi:step`.
    #[arg(long)]
    pub alpha2: Option<String>,
    /// Complete information: `alpha_3 = beta_3`.
    #[arg(long)]
    pub alpha3: Option<String>,
    /// Complete information: the three agent values.
    #[arg(long)]
    pub values: Option<String>,
    /// Incomplete information: `uniform:VMAX` or `power:THETA:VMAX`.
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Incomplete information: number of positions.
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    /// Incomplete information: ratio between successive weights past the second.
    #[arg(long, default_value_t = 0.5)]
    pub tail: f64,
    #[command(flatten)]
    pub monotone: MonotoneArgs,
}

#[derive(Debug, Clone, Args)]
pub struct MonotoneArgs {
    /// Interior points of the monotonicity grid.
    #[arg(long, default_value_t = 4096)]
    pub grid_size: usize,
    /// Relative tolerance below zero for a derivative sample.
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct CurvesArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long)]
    pub beta2: Option<String>,
    /// List of `alpha_2` values.
    #[arg(long)]
    pub alpha2: Option<String>,
    /// Value grid: list or `lo:hi:step`.
    #[arg(long)]
    pub v_grid: Option<String>,
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct BidfnArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    /// `gfp` or `vcg`.
    #[arg(long, default_value = "gfp")]
    pub mechanism: String,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Value grid; defaults to `points` evenly spaced values on `[0, vmax]`.
    #[arg(long)]
    pub v_grid: Option<String>,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyBneArgs {
    #[arg(long, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, default_value = "gfp")]
    pub mechanism: String,
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    #[arg(long)]
    pub dist: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5e-3)]
    pub eps: f64,
    /// Values checked, evenly spaced on `[0, vmax]`.
    #[arg(long, default_value_t = 21)]
    pub value_points: usize,
    /// Points on which the bidding function is tabulated.
    #[arg(long, default_value_t = 2049)]
    pub tabulation_points: usize,
    /// Deviation bids on `[0, b(vmax)]`; one probe above is added.
    #[arg(long, default_value_t = 41)]
    pub deviation_bids: usize,
}

#[derive(Debug, Clone, Args)]
pub struct IdentitiesArgs {
    /// Largest `n` for the alternating binomial identity.
    #[arg(long, default_value_t = 12)]
    pub nmax: i64,
    /// Largest `n` for the factorization of `J`; defaults to `nmax`.
    #[arg(long)]
    pub j_nmax: Option<i64>,
    /// Random tuples for the two order-statistic density reductions.
    #[arg(long, default_value_t = 0)]
    pub density_samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Runs the parsed command.
pub fn run(cli: &Cli) -> CliResult<Report> {
    match &cli.command {
        Command::Payments(a) => commands::payments(a),
        Command::EqComplete(a) => commands::eq_complete(a),
        Command::Region(a) => commands::region(a),
        Command::Curves(a) => commands::curves(a),
        Command::Bidfn(a) => commands::bidfn(a),
        Command::VerifyBne(a) => commands::verify_bne(a),
        Command::Identities(a) => commands::identities(a),
    }
}
