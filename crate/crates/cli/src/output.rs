use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use num_bigint::BigInt;
use phylogf::asym::{BigFloat, Scientific};
use serde::Serialize;

use crate::args::Format;
use crate::error::CliError;

/// `d.dddddddddE+xxxx`.
pub fn sci(s: &Scientific) -> String {
    let sign = if s.exponent < 0 { '-' } else { '+' };
    format!("{}E{}{:04}", s.mantissa(), sign, s.exponent.abs())
}

pub fn sci_float(x: &BigFloat, digits: u32) -> String {
    sci(&x.to_scientific(digits))
}

pub fn sci_int(x: &BigInt, digits: u32) -> String {
    sci(&Scientific::from_bigint(x, digits))
}

/// Writes rows as CSV with a header, a JSON array, or plain lines.
pub fn emit<T, F>(rows: &[T], format: Format, out: Option<&Path>, plain: F) -> Result<(), CliError>
where
    T: Serialize,
    F: Fn(&T) -> String,
{
    let mut sink: Box<dyn Write> = match out {
        Some(p) => Box::new(File::create(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut sink);
            for r in rows {
                w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, rows).map_err(|e| CliError::Io(e.to_string()))?;
            writeln!(sink)?;
        }
        Format::Plain => {
            for r in rows {
                writeln!(sink, "{}", plain(r))?;
            }
        }
    }
    sink.flush()?;
    Ok(())
}
