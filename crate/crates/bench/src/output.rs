//! CSV (header + rows, LF line endings) and JSON (array of objects) writers.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::{BenchError, Result};

pub fn write_rows<T: Serialize, W: Write>(
    rows: &[T],
    format: OutputFormat,
    mut out: W,
) -> Result<()> {
    match format {
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .terminator(csv::Terminator::Any(b'\n'))
                .from_writer(out);
            for row in rows {
                w.serialize(row)
                    .map_err(|e| BenchError::Serialize(e.to_string()))?;
            }
            w.flush()
                .map_err(|e| BenchError::Serialize(e.to_string()))?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut out, rows)
                .map_err(|e| BenchError::Serialize(e.to_string()))?;
            out.write_all(b"\n")
                .map_err(|e| BenchError::Serialize(e.to_string()))?;
        }
    }
    Ok(())
}

pub fn to_string<T: Serialize>(rows: &[T], format: OutputFormat) -> Result<String> {
    let mut buf = Vec::new();
    write_rows(rows, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv and json output is UTF-8"))
}

/// Writes to `path`, or to stdout when `path` is `None`.
pub fn emit<T: Serialize>(rows: &[T], format: OutputFormat, path: Option<&Path>) -> Result<()> {
    match path {
        Some(path) => {
            let io_err = |source| BenchError::Io {
                path: path.to_path_buf(),
                source,
            };
            if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(io_err)?;
            }
            let file = File::create(path).map_err(io_err)?;
            let mut w = BufWriter::new(file);
            write_rows(rows, format, &mut w)?;
            w.flush().map_err(io_err)
        }
        None => write_rows(rows, format, std::io::stdout().lock()),
    }
}
