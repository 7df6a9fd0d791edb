//! `prodgeo`: decompose states, find closest product states and run the
//! verification suites from the command line.
//!
//! Exit codes: 0 success, 1 invalid input or a failed check, 2 usage error,
//! 3 solver did not converge.

mod commands;
mod error;
mod matrix_file;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use prodgeo_core::SolverOptions;

use commands::{SolveArgs, Suite, VerifyArgs};

#[derive(Parser, Debug)]
#[command(name = "prodgeo", version, about = "Geometry of product quantum states")]
struct Cli {
    /// Print the report as JSON with sorted keys instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Split a state into its components around I/N and classify it.
    Decompose {
        file: PathBuf,
        /// Norms at or below this count as zero when classifying.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Find a bipartite product state A⊗B close to the given state.
    ClosestProduct {
        file: PathBuf,
        /// Stop when one full iteration changes the distance by less than this.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 500)]
        max_iter: usize,
        /// Number of starts; start 0 begins from the maximally mixed state.
        #[arg(long, default_value_t = 1)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Fail instead of searching boundary candidates when an update is
        /// not positive semi-definite.
        #[arg(long)]
        no_boundary: bool,
        /// Also write the factor A to this file.
        #[arg(long)]
        out_a: Option<PathBuf>,
        /// Also write the factor B to this file.
        #[arg(long)]
        out_b: Option<PathBuf>,
    },
    /// Frobenius distance between two states.
    Distance { first: PathBuf, second: PathBuf },
    /// Whether a state equals the product of its single-slot marginals.
    CheckProduct {
        file: PathBuf,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Write the maximally entangled state on n^p dimensions.
    Mes {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run a verification suite; exits 0 only if every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        n: usize,
        /// Number of slots (3 for counterexample, otherwise 2).
        #[arg(long)]
        p: Option<usize>,
        /// Random samples (500 for theorem6, 100 for separability).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(command: Command) -> error::Result<report::Report> {
    match command {
        Command::Decompose { file, tol } => commands::decompose_cmd(&file, tol),
        Command::ClosestProduct { file, tol, max_iter, starts, seed, no_boundary, out_a, out_b } => {
            let opts = SolverOptions { tol, max_iter, boundary_enabled: !no_boundary, starts, seed };
            commands::closest_product_cmd(SolveArgs {
                file: &file,
                opts,
                out_a: out_a.as_deref(),
                out_b: out_b.as_deref(),
            })
        }
        Command::Distance { first, second } => commands::distance_cmd(&first, &second),
        Command::CheckProduct { file, tol } => commands::check_product_cmd(&file, tol),
        Command::Mes { n, p, out } => commands::mes_cmd(n, p, &out),
        Command::Verify { suite, n, p, samples, seed } => {
            commands::verify_cmd(VerifyArgs { suite, n, p, samples, seed })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = if cli.json { report.to_json() + "\n" } else { report.to_text() };
            // a closed pipe (e.g. `| head`) is not an error
            let _ = std::io::stdout().lock().write_all(text.as_bytes());
            ExitCode::from(report.status.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
