//! Readers for delimited numeric input.

use std::fs::File;
use std::io::{self, Read};
use std::path::Path;

use crate::error::{CliError, CliResult};

fn open(path: &Path) -> CliResult<Box<dyn Read>> {
    if path.as_os_str() == "-" {
        return Ok(Box::new(io::stdin()));
    }
    let f = File::open(path).map_err(|e| CliError::io(format!("cannot read {}", path.display()), e))?;
    Ok(Box::new(f))
}

/// All non-empty records, with their 1-based line numbers.
fn records(path: &Path, delimiter: u8) -> CliResult<Vec<(u64, csv::StringRecord)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(open(path)?);
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec));
    }
    Ok(out)
}

fn parse_number(field: &str, line: u64, column: usize) -> CliResult<f64> {
    field.parse::<f64>().map_err(|_| {
        CliError::Input(format!(
            "line {line}, column {column}: cannot parse '{field}' as a number"
        ))
    })
}

fn looks_like_header(rec: &csv::StringRecord) -> bool {
    rec.iter().any(|f| f.parse::<f64>().is_err())
}

/// P-values from a one-column file, or from the column named `column`.
/// Returns the values and the line number of each.
pub fn read_p_values(path: &Path, column: Option<&str>, delimiter: u8) -> CliResult<(Vec<f64>, Vec<u64>)> {
    let mut recs = records(path, delimiter)?.into_iter().peekable();
    let col = match column {
        Some(name) => {
            let (_, header) = recs
                .next()
                .ok_or_else(|| CliError::Input(format!("{} is empty", path.display())))?;
            header.iter().position(|h| h == name).ok_or_else(|| {
                CliError::Input(format!(
                    "{}: no column named '{name}' (found: {})",
                    path.display(),
                    header.iter().collect::<Vec<_>>().join(", ")
                ))
            })?
        }
        None => {
            if recs.peek().is_some_and(|(_, r)| looks_like_header(r)) {
                recs.next();
            }
            0
        }
    };

    let mut values = Vec::new();
    let mut lines = Vec::new();
    for (line, rec) in recs {
        if column.is_none() && rec.len() != 1 {
            return Err(CliError::Input(format!(
                "line {line}: expected one value per line, found {} fields (use --column to pick one)",
                rec.len()
            )));
        }
        let field = rec.get(col).ok_or_else(|| {
            CliError::Input(format!("line {line}: missing column {}", col + 1))
        })?;
        let v = parse_number(field, line, col + 1)?;
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::Input(format!(
                "line {line}, column {}: p-value {field} is outside [0, 1]",
                col + 1
            )));
        }
        values.push(v);
        lines.push(line);
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{} holds no p-values", path.display())));
    }
    Ok((values, lines))
}

/// `(position, value)` rows, or bare values with positions `1..=n`. A first
/// row that does not parse is taken as a header.
pub fn read_track(path: &Path, delimiter: u8) -> CliResult<(Vec<i64>, Vec<f64>)> {
    let mut recs = records(path, delimiter)?.into_iter().peekable();
    if recs.peek().is_some_and(|(_, r)| looks_like_header(r)) {
        recs.next();
    }
    let mut positions = Vec::new();
    let mut values = Vec::new();
    let mut width = None;
    for (i, (line, rec)) in recs.enumerate() {
        if *width.get_or_insert(rec.len()) != rec.len() {
            return Err(CliError::Input(format!(
                "line {line}: {} fields where earlier rows have {}",
                rec.len(),
                width.unwrap_or(0)
            )));
        }
        match rec.len() {
            1 => {
                positions.push(i as i64 + 1);
                values.push(parse_number(&rec[0], line, 1)?);
            }
            2 => {
                let pos = rec[0].parse::<i64>().map_err(|_| {
                    CliError::Input(format!(
                        "line {line}, column 1: cannot parse '{}' as an integer position",
                        &rec[0]
                    ))
                })?;
                positions.push(pos);
                values.push(parse_number(&rec[1], line, 2)?);
            }
            k => {
                return Err(CliError::Input(format!(
                    "line {line}: expected 'position{d}value' or a single value, found {k} fields",
                    d = delimiter as char
                )))
            }
        }
    }
    if values.is_empty() {
        return Err(CliError::Input(format!("{} holds no track values", path.display())));
    }
    Ok((positions, values))
}
