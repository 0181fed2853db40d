//! CSV and JSONL datasets of [`SampleRecord`]s.
//!
//! Columns: `w_re, w_im, sigma1_re, sigma1_im, sigma2_re, sigma2_im, path,
//! classification, reachable, bounds_ok`. Floats are written with 17
//! significant digits. Missing values are empty in CSV and `null` in JSONL.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use ratiolab_core::region::SampleRecord;
use serde_json::{Map, Value};

use crate::json::{format_f64, number, to_line};

pub const COLUMNS: [&str; 10] = [
    "w_re",
    "w_im",
    "sigma1_re",
    "sigma1_im",
    "sigma2_re",
    "sigma2_im",
    "path",
    "classification",
    "reachable",
    "bounds_ok",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Jsonl,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(Format::Csv),
            "jsonl" => Ok(Format::Jsonl),
            _ => Err(format!("unknown format {s:?} (expected csv or jsonl)")),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("I/O failure on {path}: {source}")]
    IoFailure {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("malformed dataset at line {line}: {reason}")]
    Malformed { line: usize, reason: String },
}

/// One dataset row with enum fields as their string names.
#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub w_re: f64,
    pub w_im: f64,
    pub sigma1_re: Option<f64>,
    pub sigma1_im: Option<f64>,
    pub sigma2_re: Option<f64>,
    pub sigma2_im: Option<f64>,
    pub path: String,
    pub classification: String,
    pub reachable: bool,
    pub bounds_ok: Option<bool>,
}

impl From<&SampleRecord> for Row {
    fn from(r: &SampleRecord) -> Self {
        Row {
            w_re: r.w.re,
            w_im: r.w.im,
            sigma1_re: r.sigma1.map(|z| z.re),
            sigma1_im: r.sigma1.map(|z| z.im),
            sigma2_re: r.sigma2.map(|z| z.re),
            sigma2_im: r.sigma2.map(|z| z.im),
            path: r.path.as_str().to_string(),
            classification: r.classification.as_str().to_string(),
            reachable: r.reachable,
            bounds_ok: r.bounds_ok,
        }
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(format_f64).unwrap_or_default()
}

fn opt_bool(v: Option<bool>) -> String {
    v.map(|b| b.to_string()).unwrap_or_default()
}

impl Row {
    fn csv_fields(&self) -> [String; 10] {
        [
            format_f64(self.w_re),
            format_f64(self.w_im),
            opt_num(self.sigma1_re),
            opt_num(self.sigma1_im),
            opt_num(self.sigma2_re),
            opt_num(self.sigma2_im),
            self.path.clone(),
            self.classification.clone(),
            self.reachable.to_string(),
            opt_bool(self.bounds_ok),
        ]
    }

    fn json(&self) -> Value {
        let opt = |v: Option<f64>| v.map_or(Value::Null, number);
        let mut m = Map::new();
        m.insert("w_re".into(), number(self.w_re));
        m.insert("w_im".into(), number(self.w_im));
        m.insert("sigma1_re".into(), opt(self.sigma1_re));
        m.insert("sigma1_im".into(), opt(self.sigma1_im));
        m.insert("sigma2_re".into(), opt(self.sigma2_re));
        m.insert("sigma2_im".into(), opt(self.sigma2_im));
        m.insert("path".into(), Value::from(self.path.clone()));
        m.insert("classification".into(), Value::from(self.classification.clone()));
        m.insert("reachable".into(), Value::from(self.reachable));
        m.insert("bounds_ok".into(), self.bounds_ok.map_or(Value::Null, Value::from));
        Value::Object(m)
    }
}

/// Writes the records to `out` and returns the number of data rows.
pub fn write_dataset<W: Write>(
    records: &[SampleRecord],
    out: W,
    format: Format,
) -> io::Result<usize> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(COLUMNS).map_err(io::Error::from)?;
            for r in records {
                w.write_record(Row::from(r).csv_fields()).map_err(io::Error::from)?;
            }
            w.flush()?;
        }
        Format::Jsonl => {
            let mut w = BufWriter::new(out);
            for r in records {
                writeln!(w, "{}", to_line(&Row::from(r).json()))?;
            }
            w.flush()?;
        }
    }
    Ok(records.len())
}

/// Writes the records to a file.
pub fn emit_dataset(
    records: &[SampleRecord],
    path: &Path,
    format: Format,
) -> Result<usize, DatasetError> {
    let io_err = |source| DatasetError::IoFailure {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    write_dataset(records, file, format).map_err(io_err)
}

fn parse_num(s: &str, line: usize) -> Result<Option<f64>, DatasetError> {
    if s.is_empty() {
        return Ok(None);
    }
    s.parse().map(Some).map_err(|_| DatasetError::Malformed {
        line,
        reason: format!("bad number {s:?}"),
    })
}

fn parse_bool(s: &str, line: usize) -> Result<Option<bool>, DatasetError> {
    match s {
        "" => Ok(None),
        "true" => Ok(Some(true)),
        "false" => Ok(Some(false)),
        _ => Err(DatasetError::Malformed {
            line,
            reason: format!("bad boolean {s:?}"),
        }),
    }
}

fn required<T>(v: Option<T>, name: &str, line: usize) -> Result<T, DatasetError> {
    v.ok_or_else(|| DatasetError::Malformed {
        line,
        reason: format!("missing {name}"),
    })
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<Row>, DatasetError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| DatasetError::Malformed {
        line: 1,
        reason: e.to_string(),
    })?;
    if header.iter().ne(COLUMNS) {
        return Err(DatasetError::Malformed {
            line: 1,
            reason: "unexpected header".into(),
        });
    }
    let mut rows = Vec::new();
    for (k, rec) in rdr.records().enumerate() {
        let line = k + 2;
        let rec = rec.map_err(|e| DatasetError::Malformed {
            line,
            reason: e.to_string(),
        })?;
        let f = |i: usize| rec.get(i).unwrap_or("");
        rows.push(Row {
            w_re: required(parse_num(f(0), line)?, "w_re", line)?,
            w_im: required(parse_num(f(1), line)?, "w_im", line)?,
            sigma1_re: parse_num(f(2), line)?,
            sigma1_im: parse_num(f(3), line)?,
            sigma2_re: parse_num(f(4), line)?,
            sigma2_im: parse_num(f(5), line)?,
            path: f(6).to_string(),
            classification: f(7).to_string(),
            reachable: required(parse_bool(f(8), line)?, "reachable", line)?,
            bounds_ok: parse_bool(f(9), line)?,
        });
    }
    Ok(rows)
}

pub fn read_jsonl<R: io::Read>(input: R) -> Result<Vec<Row>, DatasetError> {
    let mut rows = Vec::new();
    for (k, text) in BufReader::new(input).lines().enumerate() {
        let line = k + 1;
        let text = text.map_err(|e| DatasetError::Malformed {
            line,
            reason: e.to_string(),
        })?;
        if text.trim().is_empty() {
            continue;
        }
        let v: Value = serde_json::from_str(&text).map_err(|e| DatasetError::Malformed {
            line,
            reason: e.to_string(),
        })?;
        let num = |name: &str| v.get(name).and_then(Value::as_f64);
        let string = |name: &str| v.get(name).and_then(Value::as_str).unwrap_or("").to_string();
        rows.push(Row {
            w_re: required(num("w_re"), "w_re", line)?,
            w_im: required(num("w_im"), "w_im", line)?,
            sigma1_re: num("sigma1_re"),
            sigma1_im: num("sigma1_im"),
            sigma2_re: num("sigma2_re"),
            sigma2_im: num("sigma2_im"),
            path: string("path"),
            classification: string("classification"),
            reachable: required(v.get("reachable").and_then(Value::as_bool), "reachable", line)?,
            bounds_ok: v.get("bounds_ok").and_then(Value::as_bool),
        });
    }
    Ok(rows)
}
