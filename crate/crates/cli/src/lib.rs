//! The `sepfrag` command line. [`run`] parses arguments, dispatches to a
//! command and writes its report; the binary is a thin wrapper around it.

pub mod args;
pub mod commands;
pub mod error;
pub mod input;

use std::ffi::OsString;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::{Cli, Command, Format};
use crate::error::{CliError, EXIT_USAGE};

/// Runs one command and returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let target: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(&cli.command) {
        Ok(report) => {
            let body = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("json serializes"),
                Format::Text => report.text,
            };
            let _ = writeln!(out, "{body}");
            report.exit
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command) -> Result<commands::Report, CliError> {
    match command {
        Command::Check(input) => commands::check(input),
        Command::ToBsr(input) => commands::to_bsr(input),
        Command::Decide {
            input,
            max_size,
            backend,
            emit_model,
        } => commands::run_decide(input, *max_size, *backend, emit_model.as_deref()),
        Command::Gen(g) => commands::generate(g),
        Command::EliminateEq(input) => commands::eliminate_eq(input),
        Command::ExpandCounting(input) => commands::run_expand_counting(input),
        Command::Eval { input, model } => commands::eval(input, model),
        Command::Equiv {
            left,
            right,
            up_to,
            method,
        } => commands::equiv(left, right, *up_to, *method),
    }
}
