use std::process::ExitCode;

use clap::Parser;
use nounclass::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("nounclass: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
