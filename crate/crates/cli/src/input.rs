use std::io::Read;
use std::path::Path;

use fol_syntax::{parse, Formula};

use crate::args::Input;
use crate::error::CliError;

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn read_stdin() -> Result<String, CliError> {
    let mut text = String::new();
    std::io::stdin()
        .read_to_string(&mut text)
        .map_err(|source| CliError::Io {
            path: "<stdin>".into(),
            source,
        })?;
    Ok(text)
}

/// Resolves a positional formula argument: `-` reads stdin, a path to an
/// existing file reads that file, anything else is formula text.
pub fn formula_text(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        return read_stdin();
    }
    let path = Path::new(arg);
    if path.is_file() {
        return read_file(path);
    }
    Ok(arg.to_string())
}

pub fn parse_arg(arg: &str) -> Result<Formula, CliError> {
    Ok(parse(formula_text(arg)?.trim())?)
}

impl Input {
    pub fn formula(&self) -> Result<Formula, CliError> {
        match (&self.formula, &self.file) {
            (_, Some(path)) => Ok(parse(read_file(path)?.trim())?),
            (Some(arg), None) => parse_arg(arg),
            (None, None) => Err(CliError::Usage("no formula given".into())),
        }
    }
}
