//! `twostage`: simulate, sweep, check and render two-stage bootstrap percolation.

mod args;
mod check;
mod fixture;
mod io;
mod sim;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "twostage", version, about = "Two-stage bootstrap percolation on finite square lattices")]
struct Cli {
    /// Worker threads [default: available parallelism]
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the dynamics on one configuration and write the final state and snapshots
    Run(sim::RunArgs),
    /// Monte Carlo sweep over a (p, q) grid, one CSV row per rule and cell
    Sweep(sim::SweepArgs),
    /// Check a structural property; exits 1 if it fails
    #[command(subcommand)]
    Check(check::CheckCmd),
    /// Build a deterministic test configuration
    #[command(subcommand)]
    Fixture(fixture::FixtureCmd),
    /// Render a configuration file as a binary PPM image
    Render(sim::RenderArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Run(a) => sim::run(&a),
        Command::Sweep(a) => sim::sweep(&a),
        Command::Check(c) => check::check(&c),
        Command::Fixture(c) => fixture::fixture(&c),
        Command::Render(a) => sim::render(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
