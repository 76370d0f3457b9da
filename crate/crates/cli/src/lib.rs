//! Command-line front end: the `.vf` system format, run configuration,
//! reports and the subcommands.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod config;
pub mod dsl;
pub mod error;
pub mod report;
pub mod system;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

use commands::Cli;
use error::{CliError, EXIT_USAGE};

/// Parses `args`, runs the command and returns the exit code. Reports go to
/// `out`, diagnostics to `err`.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            if wants_json {
                let v = CliError::usage(e.to_string().trim_end()).to_json();
                let _ = writeln!(err, "{v}");
            } else {
                let _ = write!(err, "{e}");
            }
            return EXIT_USAGE;
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        // The reader went away (`| head`); nothing left to report.
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            if cli.global.json {
                let _ = writeln!(err, "{}", e.to_json());
            } else {
                let _ = writeln!(err, "error: {e}");
            }
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let run = || commands::run(cli);
    let output = match cli.global.jobs {
        Some(0) => return Err(CliError::usage("--jobs must be at least 1")),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::usage(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    if let Some(dir) = &cli.global.out {
        output.write_to(dir)?;
    }
    if cli.global.json {
        writeln!(out, "{}", output.json())?;
    } else {
        write!(out, "{}", output.text)?;
        if let Some(f) = &output.report.formula_ref {
            writeln!(out, "reference: {f}")?;
        }
    }
    Ok(())
}
