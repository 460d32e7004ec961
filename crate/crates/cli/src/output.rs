//! Report files: CSV for sweeps, JSON for single values. Floats carry 17
//! significant digits and every file starts with the settings that produced it.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, CliResult};

pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// Settings rendered as TOML, one line per entry.
pub fn echo<T: Serialize>(settings: &T) -> CliResult<String> {
    toml::to_string(settings).map_err(|e| CliError::Config(format!("cannot echo settings: {e}")))
}

#[derive(Debug, Clone, Default)]
pub struct CsvReport {
    pub echo: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvReport {
    pub fn new(echo: String, header: &[&str]) -> Self {
        Self {
            echo,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn render(&self) -> CliResult<Vec<u8>> {
        let mut out = Vec::new();
        for line in self.echo.lines() {
            if line.is_empty() {
                writeln!(out, "#")?;
            } else {
                writeln!(out, "# {line}")?;
            }
        }
        let mut w = csv::Writer::from_writer(out);
        let csv_err = |e: csv::Error| CliError::Resource(e.to_string());
        w.write_record(&self.header).map_err(csv_err)?;
        for r in &self.rows {
            w.write_record(r).map_err(csv_err)?;
        }
        w.into_inner().map_err(|e| CliError::Resource(e.to_string()))
    }
}

/// `serde_json` formatter printing floats as `{:.16e}` and non-finite values as `null`.
struct SciFloat;

impl serde_json::ser::Formatter for SciFloat {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        if v.is_finite() {
            write!(w, "{v:.16e}")
        } else {
            w.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }
}

/// `{"settings": <echo>, "result": <value>}` as one JSON line.
pub fn render_json<S: Serialize, T: Serialize>(settings: &S, value: &T) -> CliResult<Vec<u8>> {
    #[derive(Serialize)]
    struct Doc<'a, S, T> {
        settings: &'a S,
        result: &'a T,
    }
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloat);
    Doc { settings, result: value }
        .serialize(&mut ser)
        .map_err(|e| CliError::Resource(e.to_string()))?;
    out.push(b'\n');
    Ok(out)
}

/// Writes to `path`, or stdout when `path` is `None` or `-`.
pub fn emit(bytes: &[u8], path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                fs::create_dir_all(dir)?;
            }
            fs::write(p, bytes)?;
        }
        _ => io::stdout().write_all(bytes)?,
    }
    Ok(())
}
