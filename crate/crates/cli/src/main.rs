mod args;
mod commands;
mod text;

use args::{Cli, Format};
use clap::error::ErrorKind;
use clap::Parser;
use commands::{Failure, Report};
use std::io::Write;
use std::process::ExitCode;

fn emit(report: &Report, format: Format, output: Option<&std::path::Path>) -> std::io::Result<()> {
    let body = match format {
        Format::Json => torfan::report::to_canonical_string(&report.json),
        Format::Text => report.text.clone(),
    };
    match output {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    let common = cli.command.common();
    match commands::run(&cli.command) {
        Ok(report) => {
            if let Err(e) = emit(&report, common.format, common.output.as_deref()) {
                eprintln!("error: writing the report: {e}");
                return ExitCode::from(1);
            }
            if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
