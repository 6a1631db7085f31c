//! `urnlab`: simulate urn models, evaluate limit theory, compare the two,
//! and analyze word counts in texts.

mod analyze;
mod args;
mod compare;
mod manifest;
mod simulate;
mod theory;

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "urnlab", version, about = "Infinite urn schemes and Simon-type text models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run replicates and write one trajectory CSV per replicate.
    Simulate(simulate::SimulateArgs),
    /// Evaluate a closed-form or series quantity and print JSON.
    Theory(theory::TheoryArgs),
    /// Simulate and compare against the limit theory; exits 1 if a row fails.
    Compare(compare::CompareArgs),
    /// Tokenize texts and report vocabulary growth and both estimators.
    Analyze(analyze::AnalyzeArgs),
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Simulate(a) => simulate::run(a),
        Command::Theory(a) => theory::run(a),
        Command::Compare(a) => compare::run(a),
        Command::Analyze(a) => analyze::run(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
