mod config;
mod report;
mod suites;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Format, RunConfig};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = match RunConfig::resolve(cli) {
        Ok(c) => c,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let report = match suites::run(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("{}: failed: {e}", cfg.command.name());
            return ExitCode::from(EXIT_FAIL);
        }
    };
    let body = match cfg.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json(),
    };
    if let Err(e) = std::fs::write(&cfg.out, body) {
        eprintln!("cannot write {}: {e}", cfg.out.display());
        return ExitCode::from(EXIT_FAIL);
    }
    print!("{}", report.summary());
    match report.first_failure() {
        None => {
            println!("all checks pass; report written to {}", cfg.out.display());
            ExitCode::SUCCESS
        }
        Some((suite, check)) => {
            println!(
                "first failing check: {}/{} (value {:e}, bound {:e})",
                suite.name, check.name, check.value, check.bound
            );
            ExitCode::from(EXIT_FAIL)
        }
    }
}
