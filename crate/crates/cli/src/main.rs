use std::process::ExitCode;

use clap::Parser;
use clusterchain_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("clusterchain {}: {e}", cli.task.name());
            ExitCode::from(e.exit_code())
        }
    }
}
