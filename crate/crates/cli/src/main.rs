mod args;
mod commands;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match commands::run(&cli.command, &cli.global) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };

    let text = match cli.global.format {
        Format::Csv => report.table.to_csv(),
        Format::Json => report.to_json(),
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }

    if report.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("verification failed: {}", report.failures.join(", "));
        ExitCode::from(1)
    }
}
