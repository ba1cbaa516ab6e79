//! CSV emission and parsing for tables of floats.
//!
//! Floats are written with Rust's shortest round-trip representation, which
//! always parses back to the identical bit pattern. Missing values (for
//! example the undefined first convergence rate) are empty fields.

use std::io::{Read, Write};

pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// Writes equally long columns under the given header.
pub fn write_columns<W: Write>(out: W, header: &[&str], columns: &[Vec<f64>]) -> std::io::Result<()> {
    assert_eq!(header.len(), columns.len());
    let rows = columns.first().map_or(0, Vec::len);
    assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
    write_rows(
        out,
        header,
        (0..rows).map(|i| columns.iter().map(|c| Some(c[i])).collect()),
    )
}

/// Writes rows of optional floats.
pub fn write_rows<W, I>(out: W, header: &[&str], rows: I) -> std::io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = Vec<Option<f64>>>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(header).map_err(csv_err)?;
    for row in rows {
        w.write_record(row.iter().map(|v| v.map(fmt_f64).unwrap_or_default()))
            .map_err(csv_err)?;
    }
    w.flush()
}

/// Parsed numeric table.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let idx = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }
}

pub fn read_table<R: Read>(input: R) -> std::io::Result<Table> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers().map_err(csv_err)?.iter().map(str::to_owned).collect();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(csv_err)?;
        let row = rec
            .iter()
            .map(|f| {
                if f.is_empty() {
                    Ok(None)
                } else {
                    f.parse::<f64>()
                        .map(Some)
                        .map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))
                }
            })
            .collect::<std::io::Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Table { header, rows })
}
