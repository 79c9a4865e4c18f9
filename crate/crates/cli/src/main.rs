//! `ballproj`: exact interpolation projector norms on Euclidean balls.
//!
//! Exit codes: 0 success or PASS, 1 verification FAIL, 2 usage error,
//! 3 degenerate simplex input.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Format;

#[derive(Parser)]
#[command(
    name = "ballproj",
    version,
    about = "Exact operator norms of linear interpolation projectors on Euclidean balls"
)]
struct Cli {
    /// Cap the worker threads used by parallel library code
    #[arg(long, global = true, value_name = "COUNT")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal projector norm per dimension: n, aₙ, ψ(aₙ), ψ(aₙ+1), kₙ, θₙ
    Table {
        /// Largest dimension of the 1..=N range
        #[arg(long = "max-n", value_name = "N")]
        max_n: usize,
        /// Extra dimensions appended after the range, comma-separated
        #[arg(long, value_delimiter = ',', value_name = "N,N,...")]
        extra: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Exact projector norm for a simplex JSON file over a ball JSON file
    Norm {
        /// Simplex file: {"n": 2, "vertices": [[..], ..]}
        #[arg(long, value_name = "FILE")]
        simplex: PathBuf,
        /// Ball file: {"center": [..], "radius": 1.0}
        #[arg(long, value_name = "FILE")]
        ball: PathBuf,
        /// Cross-check with a sampled lower bound from this many boundary points
        #[arg(long, value_name = "SAMPLES")]
        oracle: Option<usize>,
        /// Seed for the sampled cross-check
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Random sweep: some extremal point of each simplex stays in the ball
    #[command(name = "verify-t1")]
    VerifyT1 {
        /// Dimension of the unit ball
        #[arg(short)]
        n: usize,
        /// Number of random simplices
        #[arg(long, default_value_t = 100)]
        trials: u64,
        /// Face size: an integer in 1..=n, or "all"
        #[arg(long, default_value = "all")]
        m: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Search for minimal-norm nodes in the unit ball from random starts
    Optimize {
        /// Dimension, at most 12
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        starts: usize,
        /// Iterations per start
        #[arg(long, default_value_t = 20_000)]
        iters: usize,
        /// Initial perturbation size
        #[arg(long, default_value_t = 0.3)]
        step: f64,
        /// Step decay after a sweep without improvement, in (0, 1)
        #[arg(long, default_value_t = 0.7)]
        shrink: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    if let Some(threads) = cli.threads {
        let built = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
        if let Err(e) = built {
            eprintln!("error: cannot configure {threads} threads: {e}");
            return ExitCode::from(2);
        }
    }

    let outcome = match &cli.command {
        Command::Table {
            max_n,
            extra,
            format,
        } => commands::run_table(*max_n, extra, *format),
        Command::Norm {
            simplex,
            ball,
            oracle,
            seed,
        } => commands::run_norm(simplex, ball, *oracle, *seed),
        Command::VerifyT1 { n, trials, m, seed } => commands::run_verify_t1(*n, *trials, m, *seed),
        Command::Optimize {
            n,
            starts,
            iters,
            step,
            shrink,
            seed,
        } => commands::run_optimize(*n, *starts, *iters, *step, *shrink, *seed),
    };

    match outcome {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            let code = match err {
                ballproj::Error::DegenerateSimplex { .. } => 3,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
