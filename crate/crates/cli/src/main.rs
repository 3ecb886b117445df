mod args;
mod commands;
mod document;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Format};
use commands::Failure;

const EXIT_DOMAIN: u8 = 1;
const EXIT_CHECK: u8 = 2;
const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let common = cli.command.common();
    let p = common.params();
    let outcome = commands::regime(&p)
        .and_then(|regime| commands::run(&cli.command, regime).map(|report| (regime, report)));
    let (regime, report) = match outcome {
        Ok(v) => v,
        Err(Failure::Domain(reason)) => {
            eprintln!("domain error: {reason}");
            return ExitCode::from(EXIT_DOMAIN);
        }
        Err(Failure::Usage(reason)) => {
            eprintln!("usage error: {reason}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let body = match common.format {
        Format::Json => document::to_json(&report, &p, &regime.to_string()),
        Format::Csv => document::to_csv(&report),
    };
    let written = match &common.out {
        Some(path) => std::fs::write(path, body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("io error: {e}");
        return ExitCode::FAILURE;
    }
    if report.failed {
        ExitCode::from(EXIT_CHECK)
    } else {
        ExitCode::SUCCESS
    }
}
