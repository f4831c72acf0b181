use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;

/// Exact CYBE r-matrices for sl(n): build, verify, solve, analyze, roots.
#[derive(Debug, Parser)]
#[command(name = "rchain", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build an r-matrix and write it as canonical JSON.
    Build {
        /// fch, rotation, rch, rJ, ech or dj3.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// Comma-separated rationals, e.g. `1,-2/3`.
        #[arg(long, allow_hyphen_values = true)]
        xi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta: Option<String>,
        /// Draw any parameters not given from this seed.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the classical Yang-Baxter equation exactly.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve for the enlargement Cartan elements.
    Solve {
        #[arg(long)]
        n: usize,
        /// Allow even n (non-normative).
        #[arg(long)]
        exploratory: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Carrier, dual algebra, gradings and quasiprimitivity of a tensor file.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Highest-root filtration and type of a classical root system.
    Roots {
        /// A, B, C or D.
        #[arg(long)]
        series: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build {
            kind,
            n,
            xi,
            zeta,
            seed,
            out,
        } => commands::build(
            &kind,
            n,
            xi.as_deref(),
            zeta.as_deref(),
            seed,
            out.as_deref(),
        ),
        Command::Verify { input, out } => commands::verify(&input, out.as_deref()),
        Command::Solve {
            n,
            exploratory,
            out,
        } => commands::solve(n, exploratory, out.as_deref()),
        Command::Analyze { input, out } => commands::analyze(&input, out.as_deref()),
        Command::Roots { series, rank, out } => commands::roots(&series, rank, out.as_deref()),
    };
    match result {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e) as u8)
        }
    }
}
