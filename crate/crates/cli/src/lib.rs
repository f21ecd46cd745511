//! Command-line driver: `list`, `solve`, `front`, `bench`, `profile` and `selftest`.

pub mod commands;
pub mod config;
pub mod exit;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use commands::{BenchArgs, FrontArgs, ProfileArgs, SolveArgs};

#[derive(Debug, Parser)]
#[command(name = "mvlsm", version, about = "Level-set multiobjective solver")]
pub struct Cli {
    /// Worker threads for grid evaluation and per-weight solves.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List registered problems as `id, n, r, has_analytic_front`.
    List,
    /// Minimize one scalarization of one problem.
    Solve(SolveArgs),
    /// Approximate a Pareto front from many weight vectors.
    Front(FrontArgs),
    /// Score fronts by purity and hypervolume against external solvers.
    Bench(BenchArgs),
    /// Build performance profiles from a cost matrix or a metric report.
    Profile(ProfileArgs),
    /// Check built-in defaults and run smoke solves.
    Selftest,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => exit::OK,
                _ => exit::USAGE,
            };
        }
    };
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            eprintln!("error: --jobs must be at least 1");
            return exit::USAGE;
        }
        // Fails only if a pool already exists, e.g. on repeated in-process calls.
        if rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .is_err()
        {
            log::debug!("global thread pool already initialized");
        }
    }
    let result = match &cli.command {
        Command::List => commands::cmd_list(),
        Command::Solve(a) => commands::cmd_solve(a),
        Command::Front(a) => commands::cmd_front(a),
        Command::Bench(a) => commands::cmd_bench(a),
        Command::Profile(a) => commands::cmd_profile(a),
        Command::Selftest => commands::cmd_selftest(),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {f}");
            f.code
        }
    }
}
