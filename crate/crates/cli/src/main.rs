mod args;
mod commands;
mod report;

use std::io::Write;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use report::{Diagnostic, RunReport, Versions, EXIT_OK, EXIT_USAGE};

fn run(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let echo: Vec<String> = argv.into_iter().skip(1).collect();
    let start = Instant::now();
    match commands::dispatch(&cli.command) {
        Ok(outcome) => {
            let report = RunReport {
                command: commands::name(&cli.command).to_string(),
                argv: echo,
                parameters: serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null),
                result: outcome.result,
                elapsed_ms: start.elapsed().as_millis() as u64,
                versions: Versions::current(),
                rng: outcome.rng,
            };
            let mut out = std::io::stdout().lock();
            let line = serde_json::to_string(&report).expect("report serializes");
            let _ = writeln!(out, "{line}");
            EXIT_OK
        }
        Err(e) => {
            let code = e.exit_code();
            let diag = Diagnostic {
                error: e.kind(),
                message: e.to_string(),
                exit_code: code,
                argv: echo,
            };
            let line = serde_json::to_string(&diag).expect("diagnostic serializes");
            eprintln!("{line}");
            code
        }
    }
}

fn main() {
    std::process::exit(run(std::env::args().collect()));
}
