#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use sphere_conchoid::Error;

use args::{Cli, Command};

#[derive(Debug)]
pub enum CliError {
    /// Bad flag combination or violated precondition (exit 2).
    Usage(String),
    /// Output could not be written (exit 3).
    Io(io::Error),
    Lib(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SinkFailure(io) => CliError::Io(io),
            other => CliError::Lib(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io(_) => 3,
            CliError::Lib(Error::ResidualGate { .. }) => 1,
            CliError::Lib(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Usage(m) => m.clone(),
            CliError::Io(e) => format!("cannot write output: {e}"),
            CliError::Lib(e) => e.to_string(),
        }
    }
}

/// Standard output for `-`, otherwise a newly created file.
pub fn open_sink(path: &Path) -> Result<Box<dyn Write>, CliError> {
    if path.as_os_str() == "-" {
        Ok(Box::new(io::stdout().lock()))
    } else {
        Ok(Box::new(BufWriter::new(File::create(path)?)))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Curve(a) => commands::curve(&a),
        Command::Surface(a) => commands::surface(&a),
        Command::Verify(a) => suites::verify(&a),
        Command::Pencil(a) => commands::pencil(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("conchoid: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}
