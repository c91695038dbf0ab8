use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use duursma_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(outcome.stdout.as_bytes());
            let _ = stdout.flush();
            if let Some(msg) = outcome.message {
                eprintln!("{msg}");
            }
            ExitCode::from(if outcome.ok { 0 } else { 1 })
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
