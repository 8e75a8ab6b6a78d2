use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use eostrata_cli::{execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let to_file = match &cli.command {
        eostrata_cli::Command::Strata(c) | eostrata_cli::Command::Orbits(c) => c.path.is_some(),
        eostrata_cli::Command::Verify { common, .. } => common.path.is_some(),
    };
    match execute(&cli.command) {
        Ok(out) => {
            if !to_file {
                let _ = std::io::stdout().write_all(out.text.as_bytes());
            }
            if out.success {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
