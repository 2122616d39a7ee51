use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Buffered writer to a file, or to stdout when `path` is `None` or `-`.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let f = File::create(p)
                .map_err(|e| CliError::io(format!("cannot write {}", p.display()), e))?;
            Ok(Box::new(BufWriter::new(f)))
        }
        _ => Ok(Box::new(BufWriter::new(io::stdout()))),
    }
}

pub fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w).and_then(|_| w.flush()).map_err(|e| CliError::io("write failed", e))
}

/// Writes a header row followed by `rows`.
pub fn write_csv<I, R>(path: Option<&Path>, header: &[String], rows: I) -> CliResult<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(sink(path)?);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|e| CliError::io("write failed", e))
}

/// Shortest round-trippable text for a float.
pub fn num(v: f64) -> String {
    format!("{v}")
}

pub fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
