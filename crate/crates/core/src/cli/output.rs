//! CSV / JSON emitters and the run-metadata sidecar.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize, Serializer};

use super::{CliError, Format};
use crate::bands::Band;
use crate::params::Comb;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Float(f64),
    Text(String),
}

fn non_finite(x: f64) -> &'static str {
    if x.is_nan() {
        "nan"
    } else if x > 0.0 {
        "inf"
    } else {
        "-inf"
    }
}

impl Value {
    fn csv(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Float(x) if x.is_finite() => format!("{x:.16e}"),
            Value::Float(x) => non_finite(*x).to_string(),
            Value::Text(s) => s.clone(),
        }
    }
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Int(i) => s.serialize_i64(*i),
            Value::Float(x) if x.is_finite() => s.serialize_f64(*x),
            Value::Float(x) => s.serialize_str(non_finite(*x)),
            Value::Text(t) => s.serialize_str(t),
        }
    }
}

/// Column-oriented output shared by all tabular subcommands.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }
}

#[derive(Serialize)]
struct TableDocument<'a> {
    schema_version: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    comb: Option<&'a Comb>,
    columns: &'a [String],
    rows: &'a [Vec<Value>],
}

/// JSON output of `bands`; reading it back and serializing again is lossless.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandsDocument {
    pub schema_version: u32,
    pub comb: Comb,
    pub emin: f64,
    pub emax: f64,
    pub bands: Vec<Band>,
}

impl BandsDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("band data is finite");
        s.push('\n');
        s
    }
}

pub(crate) fn render_table(
    table: &Table,
    format: Format,
    command: &str,
    comb: Option<&Comb>,
) -> Result<Vec<u8>, CliError> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| CliError::Io(e.to_string());
            w.write_record(&table.columns).map_err(io)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Value::csv)).map_err(io)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.to_string()))
        }
        Format::Json => {
            let doc = TableDocument {
                schema_version: SCHEMA_VERSION,
                command,
                comb,
                columns: &table.columns,
                rows: &table.rows,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Io(e.to_string()))?;
            s.push('\n');
            Ok(s.into_bytes())
        }
    }
}

pub(crate) fn sidecar_path(output: &Path) -> PathBuf {
    let mut name = output.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    name.push(".meta.json");
    output.with_file_name(name)
}

pub(crate) struct RunInfo<'a> {
    pub command: &'a str,
    pub argv: Vec<String>,
    pub threads: usize,
    pub rows: usize,
    pub started: SystemTime,
}

/// Writes `data` to `output` (or stdout) and, for files, the metadata sidecar.
pub(crate) fn emit(data: &[u8], output: Option<&Path>, info: RunInfo) -> Result<(), CliError> {
    let Some(path) = output else {
        let mut out = std::io::stdout().lock();
        return match out.write_all(data).and_then(|_| out.flush()) {
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
            _ => Ok(()),
        };
    };
    fs::write(path, data).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    let unix = |t: SystemTime| t.duration_since(UNIX_EPOCH).map(|d| d.as_secs_f64()).unwrap_or(0.0);
    let finished = SystemTime::now();
    let meta = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "program": "hybridcomb",
        "version": env!("CARGO_PKG_VERSION"),
        "command": info.command,
        "argv": info.argv,
        "threads": info.threads,
        "rows": info.rows,
        "started_unix": unix(info.started),
        "elapsed_seconds": finished.duration_since(info.started).map(|d| d.as_secs_f64()).unwrap_or(0.0),
    });
    let side = sidecar_path(path);
    let text = serde_json::to_string_pretty(&meta).map_err(|e| CliError::Io(e.to_string()))? + "\n";
    fs::write(&side, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", side.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_formatting() {
        assert_eq!(Value::Float(0.1).csv(), "1.0000000000000001e-1");
        assert_eq!(Value::Float(f64::INFINITY).csv(), "inf");
        assert_eq!(Value::Int(-3).csv(), "-3");
        let parsed: f64 = Value::Float(1.0 / 3.0).csv().parse().unwrap();
        assert_eq!(parsed, 1.0 / 3.0);
    }

    #[test]
    fn json_infinity_is_a_string() {
        let s = serde_json::to_string(&vec![Value::Float(f64::INFINITY), Value::Float(2.5)]).unwrap();
        assert_eq!(s, r#"["inf",2.5]"#);
    }

    #[test]
    fn sidecar_name() {
        assert_eq!(sidecar_path(Path::new("/tmp/x.csv")), PathBuf::from("/tmp/x.csv.meta.json"));
    }
}
