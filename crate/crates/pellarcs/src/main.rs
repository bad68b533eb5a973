mod args;
mod commands;
mod output;
mod svg;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use args::Cli;
use output::{render_json, write_atomic, Failure, Payload};

fn execute(cli: &Cli) -> Result<bool, Failure> {
    if !(cli.tol > 0.0 && cli.tol <= 1e-6) {
        return Err(Failure::Input(format!("tol = {} must lie in (0, 1e-6]", cli.tol)));
    }
    let produced = cli.command.format();
    if let Some(wanted) = cli.format {
        if wanted != produced {
            return Err(Failure::Input(format!("this subcommand writes {produced:?}, not {wanted:?}")));
        }
    }
    let start = Instant::now();
    let outcome = commands::run(&cli.command, cli.tol)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let bytes = match &outcome.payload {
        Payload::Json { inputs, results } => {
            render_json(inputs, results, outcome.certified, &outcome.warnings, wall_ms)?
        }
        Payload::Text(text) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            text.clone().into_bytes()
        }
    };
    match &cli.output {
        Some(path) => write_atomic(path, &bytes)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(&bytes)
                .and_then(|_| out.flush())
                .map_err(|e| Failure::Input(format!("cannot write to standard output: {e}")))?;
        }
    }
    Ok(outcome.certified)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("certification failed; see the report");
            ExitCode::from(2)
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(f.exit_code())
        }
    }
}
