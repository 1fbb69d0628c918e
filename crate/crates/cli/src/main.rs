use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use sgps_lab::ast::{Command, Verb};
use sgps_lab::error::{CliError, Span};
use sgps_lab::exec::{run_session, Executor, RunOptions};
use sgps_lab::report::{emit_report, emit_session, Format};
use sgps_lab::selftest;

#[derive(Parser)]
#[command(
    name = "sgps-lab",
    version,
    about = "Skew generalized power series laboratory"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a session file.
    Run {
        file: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Record wall-clock time per command (breaks byte-identical output).
        #[arg(long)]
        timing: bool,
    },
    /// Run one worked example scenario with `key=value` parameters.
    Scenario {
        id: String,
        params: Vec<String>,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in acceptance checks.
    Selftest {
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn format(json: bool) -> Format {
    if json {
        Format::Json
    } else {
        Format::Text
    }
}

fn write_out(bytes: &[u8]) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(bytes);
    let _ = out.flush();
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(e.exit_code() as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Run {
            file,
            json,
            seed,
            timing,
        } => {
            let src = match std::fs::read_to_string(&file) {
                Ok(s) => s,
                Err(e) => return fail(&CliError::Io(e)),
            };
            match run_session(&src, RunOptions { seed, timing }) {
                Ok(reports) => {
                    write_out(&emit_session(&reports, format(json)));
                    if reports.iter().any(|r| r.is_error()) {
                        ExitCode::from(1)
                    } else {
                        ExitCode::SUCCESS
                    }
                }
                Err(e) => fail(&e),
            }
        }
        Cmd::Scenario { id, params, json } => {
            let mut pairs = Vec::new();
            for p in &params {
                match p.split_once('=') {
                    Some((k, v)) => pairs.push((k.to_string(), v.to_string())),
                    None => {
                        return fail(&CliError::syntax(
                            Span::default(),
                            format!("expected key=value, found {p:?}"),
                        ))
                    }
                }
            }
            let cmd = Command {
                verb: Verb::Scenario { id, params: pairs },
                flags: vec![],
            };
            let report =
                Executor::new(RunOptions::default()).run_command(&cmd, Span { line: 1, col: 1 });
            write_out(&emit_report(&report, format(json)));
            if report.is_error() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Cmd::Selftest { json, seed } => {
            let results = selftest::run_all(seed);
            if json {
                let v = serde_json::json!({"v": 1, "criteria": results});
                write_out(
                    format!(
                        "{}\n",
                        serde_json::to_string_pretty(&v).expect("plain data")
                    )
                    .as_bytes(),
                );
            } else {
                for r in &results {
                    let mark = if r.passed { "PASS" } else { "FAIL" };
                    write_out(format!("{mark} {:>2} {}: {}\n", r.id, r.name, r.detail).as_bytes());
                }
            }
            if results.iter().all(|r| r.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
    }
}
