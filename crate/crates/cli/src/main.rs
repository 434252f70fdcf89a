use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use lambert_cli::{run, Cli, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(v) = std::env::var("LAMBERT_THREADS") {
        match v.parse::<usize>() {
            Ok(n) if n > 0 => {
                lambert_core::par::init_thread_pool(n);
            }
            _ => {
                eprintln!("error: LAMBERT_THREADS must be a positive integer, got '{v}'");
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
    }
    let outcome = match run(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &outcome.payload)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(outcome.payload.as_bytes())
            .map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE as u8);
    }
    if let Some(note) = outcome.note {
        eprintln!("{note}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
