//! `semicircle`: command-line front end for the exact and numerical checks.

mod commands;
mod manifest;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use semicircle_core::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// Terse text; tables fall back to CSV and statistics to JSON.
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "semicircle",
    version,
    about = "Power sums of Hermite roots, lattice paths and Wigner-matrix checks"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    format: Format,

    /// Write output here and a `.manifest.json` record next to it.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads; 0 uses all available cores.
    #[arg(long, global = true, env = "SEMICIRCLE_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "subcommand")]
pub enum Command {
    /// Coefficients a_{n-k} of the monic Hermite polynomial H_n.
    Hermite {
        #[arg(long)]
        n: usize,
    },
    /// M_n(2k) as an exact polynomial in n.
    Moments {
        #[arg(long)]
        k: usize,
        /// interp, det, akl or paths.
        #[arg(long, default_value = "interp")]
        route: String,
        /// Also evaluate the polynomial at this n.
        #[arg(long)]
        eval_n: Option<u64>,
    },
    /// The polynomial A(k, l).
    Akl {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Lattice paths from the origin to (k, 0).
    Paths {
        #[arg(long)]
        k: usize,
        /// Print each path's weight polynomial.
        #[arg(long)]
        weights: bool,
        /// Print only the number of paths.
        #[arg(long)]
        count_only: bool,
    },
    /// f_n(z), the Catalan bound and the fixed-point residual on a grid.
    GfCheck {
        #[arg(long)]
        n_max: usize,
        /// Use the points j/(3G), j = 1..=G, instead of the default six.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Roots of H_n and, optionally, scaled moments against the semicircle.
    Roots {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        moments: Option<u32>,
    },
    /// Monte Carlo expected characteristic polynomial of a Wigner ensemble.
    WignerMc {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// rademacher or gaussian.
        #[arg(long, default_value = "rademacher")]
        dist: String,
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        c: f64,
        #[arg(long, default_value_t = 100_000)]
        samples: usize,
        #[arg(long, default_value_t = semicircle_core::wigner::DEFAULT_SEED)]
        seed: u64,
        /// Also histogram the scaled eigenvalues into this many bins.
        #[arg(long)]
        hist: Option<usize>,
    },
    /// Runs every cross-route check and prints a pass/fail table.
    VerifyAll,
}

impl Command {
    fn seed(&self) -> Option<u64> {
        match self {
            Command::WignerMc { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

/// Everything a subcommand produces. `failure` is set when the output is
/// complete but reports a failed check.
pub struct Report {
    pub text: String,
    pub failure: Option<String>,
}

impl Report {
    pub fn ok(text: String) -> Self {
        Report {
            text,
            failure: None,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "io",
            CliError::Failed(_) => "check-failed",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Usage(_)) => 2,
            _ => 1,
        }
    }
}

#[derive(Serialize)]
struct ErrorRecord<'a> {
    error: &'a str,
    message: String,
}

fn run(cli: &Cli) -> Result<(), CliError> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| Error::usage(format!("cannot configure threads: {e}")))?;
    }
    let report = commands::dispatch(&cli.command, cli.format)?;
    match &cli.out {
        Some(path) => manifest::write_with_manifest(
            path,
            &cli.command,
            cli.format,
            cli.command.seed(),
            &report.text,
        )?,
        None => print!("{}", report.text),
    }
    match report.failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let record = ErrorRecord {
                error: e.kind(),
                message: e.to_string(),
            };
            eprintln!("{}", serde_json::to_string(&record).expect("serializable"));
            ExitCode::from(e.exit_code())
        }
    }
}
