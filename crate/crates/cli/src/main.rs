//! `regproj`: command-line access to projections stored as gpd files.

mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use regproj::catalog::CatalogError;
use regproj::decision::DecisionError;
use regproj::gpd::{self, GpdDocument, ParseError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser)]
#[command(
    name = "regproj",
    version,
    about = "Regular projections of spatial graphs: lifts, invariants and knottedness"
)]
struct Cli {
    /// Report format
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,

    /// Worker threads for per-lift and corpus work (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a gpd file and report what it describes
    Validate { file: PathBuf },
    /// List every lift with the class of each constituent
    Lifts { file: PathBuf },
    /// Bracket, linking number and 3-colorings of one lift
    Invariants {
        file: PathBuf,
        /// Over passages as a bit string, one bit per double point
        /// (default: the file's lift section)
        #[arg(long)]
        lift: Option<String>,
        /// Restrict to the cycle with these comma-separated edges; give it
        /// twice for a pair of disjoint cycles (default: every constituent)
        #[arg(long = "cycle", value_name = "EDGES")]
        cycles: Vec<String>,
    },
    /// Double point types and the curve class of every cycle
    Classify { file: PathBuf },
    /// Decide whether every lift of the projection is nontrivial
    DecideKnotted { file: PathBuf },
    /// Print the table of circle projections
    Catalog {
        #[arg(long, default_value_t = 3)]
        max_cr: usize,
    },
    /// Replay every acceptance criterion over the generated corpus
    VerifyTheorems {
        /// Seed for the random Reidemeister walks
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}", parse_message(path, source))]
    Parse { path: PathBuf, source: ParseError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Decision(#[from] DecisionError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    /// The report is already printed; only the exit code is left.
    #[error("exit {0}")]
    Reported(u8),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Reported(code) => *code,
            _ => 2,
        }
    }
}

fn parse_message(path: &Path, e: &ParseError) -> String {
    e.diagnostics
        .iter()
        .map(|d| format!("{}:{d}", path.display()))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn load(path: &Path) -> Result<GpdDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    gpd::parse(&text).map_err(|source| CliError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

fn run(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("--jobs: {e}")))?;
    }
    let f = cli.format;
    match cli.command {
        Command::Validate { file } => report::validate(&file, f),
        Command::Lifts { file } => report::lifts(&load(&file)?, f),
        Command::Invariants { file, lift, cycles } => report::invariants(&load(&file)?, lift.as_deref(), &cycles, f),
        Command::Classify { file } => report::classify(&load(&file)?, f),
        Command::DecideKnotted { file } => report::decide_knotted(&load(&file)?, f),
        Command::Catalog { max_cr } => report::catalog(max_cr, f),
        Command::VerifyTheorems { seed } => report::verify_theorems(seed, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Reported(_)) {
                eprintln!("error: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
