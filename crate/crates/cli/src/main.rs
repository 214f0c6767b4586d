use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use tmfg_cli::artifact::{destination, write_output};
use tmfg_cli::commands::{bench, compare, filter, gen, replay, validate};
use tmfg_cli::{Result, EXIT_OK, EXIT_VALIDATION};

/// Planar chordal network filtering of dense weight matrices.
#[derive(Parser)]
#[command(name = "tmfg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter a matrix or time series into a sparse planar graph.
    Filter(filter::FilterArgs),
    /// Write a synthetic weight matrix as CSV.
    Gen(gen::GenArgs),
    /// Time builds over a range of sizes and fit polynomial models.
    Bench(bench::BenchArgs),
    /// Mean total-weight ratio of each method against pmfg.
    Compare(compare::CompareArgs),
    /// Check a JSON filter result; exits 1 if any check fails.
    Validate(validate::ValidateArgs),
    /// Re-run the command recorded in an output and compare the bytes.
    Replay(replay::ReplayArgs),
}

fn run(cli: Cli) -> Result<bool> {
    let (artifact, to): (_, Option<PathBuf>) = match cli.command {
        Command::Filter(a) => (filter::filter(&a)?, filter::output_path(&a)),
        Command::Gen(a) => (gen::gen(&a)?, destination(a.output.as_deref(), &a.default_name())),
        Command::Bench(a) => {
            let name = format!("bench.{}", a.format.extension());
            (bench::bench(&a)?, destination(a.output.as_deref(), &name))
        }
        Command::Compare(a) => {
            let name = format!("compare.{}", a.format.extension());
            (compare::compare(&a)?, destination(a.output.as_deref(), &name))
        }
        Command::Validate(a) => (validate::validate(&a)?, a.output.clone()),
        Command::Replay(a) => {
            replay::replay(&a)?;
            println!("{}: reproduced", a.file.display());
            return Ok(true);
        }
    };
    write_output(&artifact.render(), to.as_deref())?;
    Ok(artifact.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::from(EXIT_OK),
        Ok(false) => ExitCode::from(EXIT_VALIDATION),
        Err(e) => {
            eprintln!("tmfg: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
