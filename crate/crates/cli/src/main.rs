mod args;
mod commands;
mod config;
mod report;
mod suite;

use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use glocal_core::Limits;

use args::{Cli, Command};
use report::{CliError, CliResult, Outcome, Status};

fn dispatch(command: &Command, limits: &Limits, seed: u64) -> CliResult<Outcome> {
    match command {
        Command::Roots { system } => commands::roots(system, limits),
        Command::Cartan { roots, check, ds } => commands::cartan(roots, *check, *ds),
        Command::Lang { op } => commands::lang(op, limits),
        Command::H1 { group, s, p, d, level } => commands::h1(*group, *s, *p, *d, *level, limits),
        Command::DmCheck { s, q, n } => commands::dm_check(*s, *q, *n, limits),
        Command::Building { op } => commands::building(op, limits),
        Command::Satake { n, p, lambda } => commands::satake(*n, *p, lambda, limits),
        Command::Hecke { op } => commands::hecke(op, limits),
        Command::Lfactor(a) => commands::lfactor(a),
        Command::Suite { name } => suite::run(name, limits, seed),
        Command::Run { .. } => Err(CliError::invalid("run configs cannot nest")),
    }
}

fn limits_for(cap: Option<u64>) -> Limits {
    let mut limits = Limits::default();
    if let Some(cap) = cap {
        limits.group_order = cap;
    }
    limits
}

/// Parses `argv` and runs it, returning the exit code.
fn execute(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if let Command::Run { config } = &cli.command {
        return run_config(config);
    }
    let echo: Vec<String> = argv.iter().skip(1).cloned().collect();
    let limits = limits_for(cli.cap);
    let start = Instant::now();
    let out = cli.json_out.as_deref();
    match dispatch(&cli.command, &limits, cli.seed) {
        Ok(outcome) => {
            if let Err(msg) = report::lint(&outcome.verdicts) {
                eprintln!("{msg}");
                return 1;
            }
            let text = report::render(&echo, cli.seed, &outcome, start.elapsed());
            if let Err(e) = report::write_out(&text, out) {
                eprintln!("{e}");
                return e.exit_code();
            }
            match report::overall(&outcome.verdicts) {
                Status::Fail => {
                    for v in outcome.verdicts.iter().filter(|v| v.status == Status::Fail) {
                        eprintln!("failed: {} ({})", v.anchor, v.claim);
                    }
                    1
                }
                _ => 0,
            }
        }
        Err(e) => {
            eprintln!("{e}");
            let _ = report::write_out(&report::render_error(&echo, cli.seed, &e), out);
            e.exit_code()
        }
    }
}

fn run_config(path: &Path) -> i32 {
    let argv = match config::load(path).and_then(|c| config::to_args(&c)) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    if argv.get(1).map(String::as_str) == Some("run") {
        eprintln!("{}", CliError::invalid("run configs cannot nest"));
        return 2;
    }
    execute(argv)
}

fn main() -> ExitCode {
    let code = execute(std::env::args().collect());
    ExitCode::from(code as u8)
}
