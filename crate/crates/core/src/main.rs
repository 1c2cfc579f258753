use std::process::ExitCode;

use clap::Parser;
use gixgd::cli::{self, Cli, OutputEnvelope, EXIT_NUMERICAL};

fn main() -> ExitCode {
    let args = match Cli::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { cli::EXIT_USAGE as u8 } else { 0 });
        }
    };
    let envelope = OutputEnvelope { format: args.format, destination: args.output.clone() };
    let outcome = match cli::run(&args.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::exit_code(&e) as u8);
        }
    };
    if let Err(e) = envelope.emit(&outcome.table) {
        eprintln!("error: {e}");
        return ExitCode::from(cli::EXIT_USAGE as u8);
    }
    match outcome.numerical_failure {
        Some(msg) => {
            eprintln!("warning: {msg}");
            ExitCode::from(EXIT_NUMERICAL as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
