use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sg_cli::commands::{self, ClassifyArgs, RestrictArgs, Status, VerifyArgs};
use sg_core::Error;

/// Edge restrictions of harmonic functions and Laplacian eigenfunctions on
/// the Sierpinski gasket.
#[derive(Debug, Parser)]
#[command(name = "sgedge", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a restriction at the dyadic points of an edge.
    Restrict(RestrictArgs),
    /// Classify a restriction and count its extrema.
    Classify(ClassifyArgs),
    /// Run a verification suite against the sampling oracle.
    Verify(VerifyArgs),
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::InvalidSpec(_) => 2,
        Error::ForbiddenEigenvalue { .. } | Error::EigenvalueOutOfRange { .. } => 3,
        Error::ConstantOnEdge => 4,
        Error::LevelTooLarge { .. } => 5,
        _ => 6,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Restrict(a) => commands::restrict(a),
        Command::Classify(a) => commands::classify(a),
        Command::Verify(a) => commands::verify(a),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            eprintln!("sgedge: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(outcome.text.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(6);
    }
    match outcome.status {
        Status::Ok => ExitCode::SUCCESS,
        Status::Failed => ExitCode::from(1),
        Status::Error(e) => {
            eprintln!("sgedge: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
