//! `heightlab` command line.
//!
//! Exit codes: 0 success, 2 invalid input, 3 unsupported scope, 4 a result
//! failed its internal re-check.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(name = "heightlab", version, about = "Exact heights, very-large divisors, specializations and unit equations")]
pub struct Cli {
    /// Read the subcommand's inputs from a JSON object; keys are the long
    /// option names, command-line options take precedence.
    #[arg(long, global = true, value_name = "FILE")]
    pub json: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    pub format: Format,
    /// Seed for sampled property reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Digits after the decimal point for floating-point renderings.
    #[arg(long, global = true, default_value_t = 6)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Heights over Q: projective points, algebraic numbers, Northcott sets.
    Heights(commands::HeightsArgs),
    /// Heights and valuations over Q(t).
    Ffheights(commands::FfHeightsArgs),
    /// Certify that a divisor on projective space is very large.
    Verylarge(commands::VeryLargeArgs),
    /// Evaluate Wang's inequality on a list of points.
    Wang(commands::WangArgs),
    /// Specialize an element of a finitely generated domain.
    Specialize(commands::SpecializeArgs),
    /// Solve u + v = 1 in the units of Z[t][1/f].
    Unitseq(commands::UnitSeqArgs),
    /// Solve, specialize and reconstruct: the full unit-equation pipeline.
    Pipeline(commands::PipelineArgs),
}

fn exit_code(err: &anyhow::Error) -> u8 {
    match err.downcast_ref::<heightlab::Error>() {
        Some(heightlab::Error::VerificationFailed(_)) => 4,
        Some(e) if e.is_unsupported() => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(report) => match report.emit(cli.format, cli.out.as_deref()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
