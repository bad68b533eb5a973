//! Report envelope, number formatting and file writing.

use std::fmt;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

use pellarcs_core::Error;

/// Why a run did not finish with exit status 0.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters outside the supported domain; exit status 1.
    Input(String),
    /// A computation ran but could not be certified; exit status 2.
    Uncertified(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::Uncertified(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(msg) => write!(f, "input error: {msg}"),
            Failure::Uncertified(msg) => write!(f, "not certified: {msg}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Degenerate { .. } => Failure::Input(e.to_string()),
            _ => Failure::Uncertified(e.to_string()),
        }
    }
}

/// What a subcommand produced.
pub enum Payload {
    Json { inputs: Value, results: Value },
    Text(String),
}

pub struct Outcome {
    pub payload: Payload,
    pub certified: bool,
    pub warnings: Vec<String>,
}

#[derive(Serialize)]
struct Report<'a> {
    inputs: &'a Value,
    results: &'a Value,
    certified: bool,
    warnings: &'a [String],
    wall_ms: f64,
}

/// Writes floats with 17 significant digits.
struct Sig17;

impl Formatter for Sig17 {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{}", sig17(value))
    }
}

pub fn sig17(x: f64) -> String {
    format!("{x:.16e}")
}

fn all_finite(v: &Value) -> bool {
    match v {
        Value::Null => false,
        Value::Number(n) => n.as_f64().is_some_and(f64::is_finite),
        Value::Array(items) => items.iter().all(all_finite),
        Value::Object(map) => map.values().all(all_finite),
        _ => true,
    }
}

pub fn render_json(
    inputs: &Value,
    results: &Value,
    certified: bool,
    warnings: &[String],
    wall_ms: f64,
) -> Result<Vec<u8>, Failure> {
    if !all_finite(results) || !all_finite(inputs) {
        return Err(Failure::Uncertified("non-finite value in the results".into()));
    }
    let report = Report {
        inputs,
        results,
        certified,
        warnings,
        wall_ms,
    };
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Sig17);
    report
        .serialize(&mut ser)
        .map_err(|e| Failure::Uncertified(format!("serialization failed: {e}")))?;
    out.push(b'\n');
    Ok(out)
}

/// Writes through `<path>.partial` and renames, so readers never see a truncated file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let mut partial = path.as_os_str().to_owned();
    partial.push(".partial");
    fs::write(&partial, bytes)?;
    fs::rename(&partial, path)
}

/// CSV text with a header row; numbers already formatted by the caller.
pub fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| Failure::Uncertified(format!("CSV writing failed: {e}"));
    w.write_record(header).map_err(fail)?;
    for row in rows {
        w.write_record(row).map_err(fail)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Uncertified(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Uncertified(e.to_string()))
}
