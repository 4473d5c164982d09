//! Command-line front end for the `phylogf` library.

mod args;
mod commands;
mod error;
mod output;
mod verify;

use std::fs::File;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, Format, OutputArgs};
use error::CliError;

fn run_verify(level: args::Level, output: &OutputArgs) -> Result<(), CliError> {
    let report = verify::run(level);
    let out = output.out.as_deref();
    match output.format {
        Format::Json => {
            let mut sink: Box<dyn Write> = match out {
                Some(p) => Box::new(File::create(p)?),
                None => Box::new(io::stdout().lock()),
            };
            serde_json::to_writer_pretty(&mut sink, &report).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(sink)?;
        }
        f => output::emit(&report.checks, f, out, |c| {
            format!("{} {} [{}]: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.inputs, c.detail)
        })?,
    }
    match report.first_failure() {
        Some(c) => Err(CliError::Failed(format!("{} [{}]: {}", c.name, c.inputs, c.detail))),
        None => Ok(()),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let fmt = cli.output.format;
    let out = cli.output.out.as_deref();
    match &cli.command {
        Command::Count { ck, ns } => commands::count(ck, ns, fmt, out),
        Command::Leafcount { ck, l } => commands::leafcount(ck, *l, fmt, out),
        Command::Asym { ck, ns, l, order, digits } => commands::asym(ck, ns, *l, *order, *digits, fmt, out),
        Command::Table { ck, rows, digits } => commands::table(ck, rows, *digits, fmt, out),
        Command::Oracle { class, k, ns, oracle_cap } => commands::oracle(*class, *k, ns, *oracle_cap, fmt, out),
        Command::Verify { level } => run_verify(*level, &cli.output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("phylogf: {e}");
            e.exit_code()
        }
    }
}
