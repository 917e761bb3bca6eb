//! `csl`: coincidence site lattice computations from the command line.
//!
//! Exit codes: 0 accept, 1 clean mathematical rejection, 2 input or usage error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "csl",
    version,
    about = "Exact coincidence-symmetry computations for lattices"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputMode::Structured, global = true)]
    output: OutputMode,

    /// Run every kernel on one thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputMode {
    /// Canonical JSON, one document on stdout.
    Structured,
    /// Indented text with the same content.
    Human,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    /// Smallest witness by scanning y = 1, 2, ...
    Exhaustive,
    /// y = product of the budget primes.
    PrimeProduct,
}

#[derive(clap::Args)]
pub struct Pair {
    /// Structure matrix file of the lattice.
    #[arg(long)]
    lattice: PathBuf,
    /// Matrix file of the map T (canonical coordinates).
    #[arg(long)]
    matrix: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Commensurability, coincidence-symmetry and isometry membership, A⁻¹TA and Σ.
    Check(Pair),
    /// The coincidence index Σ = [L : L ∩ TL] only.
    Index(Pair),
    /// Factor a coincidence isometry into reflections along lattice vectors.
    Decompose(Pair),
    /// Classify the planar lattice [[a, 1], [0, b]]·Z² by its parameters (a, b²).
    Classify2d {
        /// The parameter a > 0, e.g. "1" or "0+1*sqrt(2)".
        #[arg(long)]
        a: String,
        /// The parameter b² > 0.
        #[arg(long)]
        b2: String,
        /// Radicand of the field the parameters live in (0 for rational).
        #[arg(long, default_value_t = 0)]
        d: u64,
        /// Sample this many lattice vectors and orthogonal maps against the classification.
        #[arg(long)]
        spot_check: Option<usize>,
        /// Seed for the spot-check sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Prime-budget growth of the reflections along e₁ + y·e₂.
    Census {
        /// Number of rounds (at least 1).
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..=10_000))]
        rounds: u64,
        #[arg(long, value_enum, default_value_t = Strategy::Exhaustive)]
        strategy: Strategy,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        coincidence::Execution::Sequential
    } else {
        coincidence::Execution::Parallel
    };
    let outcome = match &cli.command {
        Command::Check(p) => commands::check(p, false),
        Command::Index(p) => commands::check(p, true),
        Command::Decompose(p) => commands::decompose(p),
        Command::Classify2d {
            a,
            b2,
            d,
            spot_check,
            seed,
        } => commands::classify2d(a, b2, *d, *spot_check, *seed, exec),
        Command::Census { rounds, strategy } => commands::census(*rounds as usize, *strategy, exec),
    };
    match outcome {
        Ok(report) => {
            match cli.output {
                OutputMode::Structured => println!("{}", report.document),
                OutputMode::Human => print!("{}", render::human(&report.document)),
            }
            ExitCode::from(if report.accepted { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
