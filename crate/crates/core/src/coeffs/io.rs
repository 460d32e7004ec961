//! Plain-text cache: a header
//! `gl3-coeffs v1 N=<n> mu=<mu1>,<mu2>,<mu3> selfdual=<0|1>`
//! followed by lines `n re im`.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use super::table::{GL3CoefficientTable, Provider};
use crate::special::ArchimedeanData;
use crate::{Error, Result};

fn format_mu(m: Complex64) -> String {
    if m.im == 0.0 {
        format!("{:.16e}", m.re)
    } else {
        format!("{:.16e}{:+.16e}i", m.re, m.im)
    }
}

fn parse_mu(s: &str) -> Option<Complex64> {
    if let Some(body) = s.strip_suffix('i') {
        // split at the sign that starts the imaginary part (not an exponent sign)
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'))?;
        let re = body[..split].parse().ok()?;
        let im = body[split..].parse().ok()?;
        Some(Complex64::new(re, im))
    } else {
        s.parse().ok().map(|re| Complex64::new(re, 0.0))
    }
}

pub fn write_table<W: Write>(table: &GL3CoefficientTable, mut w: W) -> Result<()> {
    let mu: Vec<String> = table.arch.mu.iter().map(|&m| format_mu(m)).collect();
    writeln!(
        w,
        "gl3-coeffs v1 N={} mu={} selfdual={}",
        table.len(),
        mu.join(","),
        u8::from(table.self_dual)
    )?;
    for (i, a) in table.values().iter().enumerate() {
        writeln!(w, "{} {:.16e} {:.16e}", i + 1, a.re, a.im)?;
    }
    w.flush()?;
    Ok(())
}

struct Header {
    n: usize,
    mu: [Complex64; 3],
    self_dual: bool,
}

fn parse_header(line: &str) -> Result<Header> {
    let err = |message: &str| Error::Parse {
        line: 1,
        message: message.to_string(),
    };
    let mut fields = line.split_whitespace();
    if fields.next() != Some("gl3-coeffs") || fields.next() != Some("v1") {
        return Err(err("expected `gl3-coeffs v1`"));
    }
    let (mut n, mut mu, mut self_dual) = (None, None, None);
    for f in fields {
        let (key, value) = f.split_once('=').ok_or_else(|| err("malformed header field"))?;
        match key {
            "N" => n = Some(value.parse().map_err(|_| err("bad N"))?),
            "mu" => {
                let parts: Vec<Complex64> = value
                    .split(',')
                    .map(parse_mu)
                    .collect::<Option<_>>()
                    .ok_or_else(|| err("bad mu"))?;
                let arr: [Complex64; 3] = parts.try_into().map_err(|_| err("mu needs three values"))?;
                mu = Some(arr);
            }
            "selfdual" => {
                self_dual = Some(match value {
                    "0" => false,
                    "1" => true,
                    _ => return Err(err("selfdual must be 0 or 1")),
                })
            }
            _ => return Err(err("unknown header field")),
        }
    }
    Ok(Header {
        n: n.ok_or_else(|| err("missing N"))?,
        mu: mu.ok_or_else(|| err("missing mu"))?,
        self_dual: self_dual.ok_or_else(|| err("missing selfdual"))?,
    })
}

/// Reads a table; the header is optional (zero parameters, not self-dual).
pub fn read_table<R: Read>(r: R) -> Result<GL3CoefficientTable> {
    let reader = BufReader::new(r);
    let mut header = None;
    let mut values = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if lineno == 1 && trimmed.starts_with("gl3-coeffs") {
            header = Some(parse_header(trimmed)?);
            continue;
        }
        let err = |message: String| Error::Parse {
            line: lineno,
            message,
        };
        let parts: Vec<&str> = trimmed.split_whitespace().collect();
        if parts.len() != 3 {
            return Err(err(format!("expected `n re im`, found {} fields", parts.len())));
        }
        let n: usize = parts[0]
            .parse()
            .map_err(|_| err(format!("bad index `{}`", parts[0])))?;
        if n != values.len() + 1 {
            return Err(err(format!("expected index {}, found {n}", values.len() + 1)));
        }
        let re: f64 = parts[1]
            .parse()
            .map_err(|_| err(format!("bad real part `{}`", parts[1])))?;
        let im: f64 = parts[2]
            .parse()
            .map_err(|_| err(format!("bad imaginary part `{}`", parts[2])))?;
        values.push(Complex64::new(re, im));
    }
    let (arch, self_dual) = match &header {
        Some(h) => {
            if h.n != values.len() {
                return Err(Error::Parse {
                    line: 1,
                    message: format!("header declares N={} but {} lines follow", h.n, values.len()),
                });
            }
            (ArchimedeanData::with_override(h.mu), h.self_dual)
        }
        None => (
            ArchimedeanData::with_override([Complex64::new(0.0, 0.0); 3]),
            false,
        ),
    };
    GL3CoefficientTable::new(values, arch, self_dual, Provider::Imported)
}

pub fn export_table(table: &GL3CoefficientTable, path: impl AsRef<Path>) -> Result<()> {
    write_table(table, BufWriter::new(File::create(path)?))
}

pub fn import_table(path: impl AsRef<Path>) -> Result<GL3CoefficientTable> {
    read_table(File::open(path)?)
}
