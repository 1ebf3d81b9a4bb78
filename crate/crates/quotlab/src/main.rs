use std::process::ExitCode;

use clap::Parser;
use quotlab::cli::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match quotlab::commands::run(&cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(v) => {
            eprintln!("{v} invariant violation(s)");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
