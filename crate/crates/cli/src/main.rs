//! `tangles`: exact generating series for alternating tangles and links.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::Format;

pub const CACHE_ENV: &str = "TANGLES_CACHE_DIR";

#[derive(Parser, Debug)]
#[command(name = "tangles", version, about = "Exact generating series for alternating tangles and links")]
struct Cli {
    /// Output format. CSV is only available for scalar (fixed-τ) series.
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached Weingarten tables.
    #[arg(long, env = CACHE_ENV, global = true)]
    cache_dir: Option<PathBuf>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Planar quartic model: bare and renormalized free energy, Γ and t.
    Planar(OrderArgs),
    /// Flype classes: A, Γ̃, g₀ and the 6- and 8-point functions.
    Flype(OrderArgs),
    /// Virtual tangles by minimal genus, from the complex-model oracle.
    Virtual(VirtualArgs),
    /// Coloured O(τ) model: renormalized couplings and flype-class correlators.
    Coloured(ColouredArgs),
    /// Two-point function at τ → 0 (long curves and knots).
    Knots(OrderArgs),
    /// Brute-force diagram enumeration.
    Oracle(OracleArgs),
    /// Growth constant and exponent fits.
    Asymptotics(AsymptoticsArgs),
    /// Weingarten table for 2k-point link patterns.
    Weingarten(WeingartenArgs),
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    /// Truncation order in g.
    #[arg(long)]
    pub order: usize,
}

#[derive(Args, Debug)]
pub struct VirtualArgs {
    #[arg(long)]
    pub order: usize,
    /// Largest genus to report.
    #[arg(long, default_value_t = 3)]
    pub genus_max: usize,
    /// Refuse to run the oracle beyond this many vertices.
    #[arg(long, default_value_t = 6)]
    pub oracle_max_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TauModeArg {
    Generic,
    Fixed,
    Zero,
}

#[derive(Args, Debug)]
pub struct ColouredArgs {
    #[arg(long)]
    pub order: usize,
    #[arg(long, value_enum, default_value = "generic")]
    pub tau_mode: TauModeArg,
    /// Loop weight for `--tau-mode fixed`.
    #[arg(long)]
    pub tau: Option<String>,
    /// Largest correlator size 2k; 3 adds the six-point classes.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(2..=3))]
    pub kmax: u8,
    /// Verify the τ = 1 identities against the planar flype results.
    #[arg(long)]
    pub check_tau1: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OracleModel {
    Hermitean,
    Complex,
    Coloured,
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub model: OracleModel,
    #[arg(long)]
    pub order: usize,
    /// Boundary pattern for coloured correlators, e.g. "(12)(34)".
    #[arg(long, default_value = "(12)")]
    pub pattern: String,
    /// Include tangency vertices (second coupling).
    #[arg(long)]
    pub two_coupling: bool,
    #[arg(long, default_value_t = 6)]
    pub oracle_max_order: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FitSeries {
    /// Bare planar free energy at t = 1.
    BareF,
    /// Prime link free energy after wave-function renormalization.
    RenormalizedF,
    /// Flype classes of prime 2-tangles.
    GammaTilde,
    /// Two-point function at τ → 0.
    Knots,
}

#[derive(Args, Debug)]
pub struct AsymptoticsArgs {
    #[arg(long, value_enum)]
    pub series: FitSeries,
    #[arg(long)]
    pub order: usize,
    /// Number of trailing ratios in the fit.
    #[arg(long, default_value_t = 40)]
    pub window: usize,
    /// Also evaluate the conjectured O(τ) exponent at this τ.
    #[arg(long)]
    pub tau: Option<String>,
}

#[derive(Args, Debug)]
pub struct WeingartenArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long, value_enum, default_value = "generic")]
    pub tau_mode: TauModeArg,
    #[arg(long)]
    pub tau: Option<String>,
}

/// A failure with a stable machine-readable kind.
#[derive(Debug)]
pub struct Failure {
    pub kind: &'static str,
    pub message: String,
    pub code: u8,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure { kind: "invalid-argument", message: message.into(), code: 2 }
    }

    pub fn check(message: impl Into<String>) -> Self {
        Failure { kind: "check-failed", message: message.into(), code: 3 }
    }
}

impl From<tangle_core::Error> for Failure {
    fn from(e: tangle_core::Error) -> Self {
        use tangle_core::Error as E;
        let kind = match &e {
            E::Infeasible { .. } => "infeasible",
            E::InvalidArgument(_) | E::Parse(_) => "invalid-argument",
            E::Cache(_) => "cache",
            E::Check(_) => "check-failed",
            E::Io(_) => "io",
            _ => "computation",
        };
        let code = if kind == "invalid-argument" || kind == "infeasible" { 2 } else { 1 };
        Failure { kind, message: e.to_string(), code }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let (report, verdict) = match &cli.command {
        Command::Planar(a) => (commands::planar(a)?, Ok(())),
        Command::Flype(a) => (commands::flype(a)?, Ok(())),
        Command::Virtual(a) => (commands::virtual_tangles(a)?, Ok(())),
        Command::Coloured(a) => commands::coloured(a)?,
        Command::Knots(a) => (commands::knots(a)?, Ok(())),
        Command::Oracle(a) => (commands::oracle(a)?, Ok(())),
        Command::Asymptotics(a) => (commands::asymptotics(a)?, Ok(())),
        Command::Weingarten(a) => (commands::weingarten(a, cli.cache_dir.as_deref())?, Ok(())),
    };
    let io_err = |e: io::Error| Failure { kind: "io", message: e.to_string(), code: 1 };
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(io_err)?)),
        None => Box::new(io::stdout().lock()),
    };
    report
        .write(cli.format, &mut *sink)
        .map_err(|m| if cli.format == Format::Csv { Failure::usage(m) } else { Failure { kind: "io", message: m, code: 1 } })?;
    sink.flush().map_err(io_err)?;
    verdict
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            ExitCode::from(f.code)
        }
    }
}
