//! Distance-matrix and characteristics files, and decimal formatting.
//!
//! Matrix files are either CSV (`n` rows of `n` numbers, optionally preceded
//! by a header row of labels) or JSON `{"labels": [...], "dist": [[...]]}`.
//! Characteristics files are JSON objects with the keys `m`, `diam`,
//! `alpha_minus`, `alpha_plus`, `d_minus`, `d_plus` and optionally `eps`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{FiniteMetricSpace, Validation};
use crate::simplex::Characteristics;

/// A parsed but not yet validated matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RawMatrix {
    pub labels: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl RawMatrix {
    pub fn validate(self, opts: Validation) -> Result<FiniteMetricSpace> {
        FiniteMetricSpace::validate_labeled(self.labels, self.rows, opts)
    }
}

/// Contents of an input file.
#[derive(Clone, Debug)]
pub enum Input {
    Matrix(RawMatrix),
    Characteristics(Characteristics),
}

fn parse_number(field: &str, row: usize, col: usize) -> Result<f64> {
    let v: f64 = field
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("row {row}, column {col}: {field:?} is not a number")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("row {row}, column {col}: {field:?} is not finite")));
    }
    Ok(v)
}

pub fn parse_csv(text: &str) -> Result<RawMatrix> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| Error::Parse(e.to_string()))?;
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push(rec.iter().map(str::to_owned).collect::<Vec<_>>());
    }
    if records.is_empty() {
        return Err(Error::Parse("no rows".into()));
    }
    let width = records[0].len();
    let first_numeric = records[0].iter().all(|f| f.parse::<f64>().is_ok());
    let has_header = !first_numeric || records.len() == width + 1;
    let labels = if has_header {
        records.remove(0)
    } else {
        (0..records.len()).map(|i| i.to_string()).collect()
    };
    let rows = records
        .iter()
        .enumerate()
        .map(|(r, fields)| {
            fields
                .iter()
                .enumerate()
                .map(|(c, f)| parse_number(f, r, c))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RawMatrix { labels, rows })
}

#[derive(Deserialize)]
struct JsonMatrix {
    #[serde(default)]
    labels: Option<Vec<String>>,
    dist: Vec<Vec<serde_json::Value>>,
}

#[derive(Serialize)]
struct JsonMatrixOut<'a> {
    labels: &'a [String],
    dist: Vec<Vec<f64>>,
}

pub fn parse_json(text: &str) -> Result<Input> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("alpha_minus").is_some() {
        let c: Characteristics =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        return Ok(Input::Characteristics(c));
    }
    let m: JsonMatrix = serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
    let rows = m
        .dist
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, v)| match v {
                    serde_json::Value::Number(num) => num
                        .as_f64()
                        .filter(|f| f.is_finite())
                        .ok_or_else(|| Error::Parse(format!("row {r}, column {c}: not finite"))),
                    serde_json::Value::String(s) => parse_number(s, r, c),
                    other => Err(Error::Parse(format!("row {r}, column {c}: {other} is not a number"))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = m
        .labels
        .unwrap_or_else(|| (0..rows.len()).map(|i| i.to_string()).collect());
    Ok(Input::Matrix(RawMatrix { labels, rows }))
}

/// Parses by content: a leading `{` means JSON, anything else CSV.
pub fn parse_input(text: &str) -> Result<Input> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_csv(text).map(Input::Matrix)
    }
}

pub fn read_input(path: &Path) -> Result<Input> {
    parse_input(&fs::read_to_string(path)?)
}

/// Reads and validates a matrix file.
pub fn read_space(path: &Path, opts: Validation) -> Result<FiniteMetricSpace> {
    match read_input(path)? {
        Input::Matrix(raw) => raw.validate(opts),
        Input::Characteristics(_) => Err(Error::Parse(format!(
            "{} holds characteristics, not a distance matrix",
            path.display()
        ))),
    }
}

/// CSV with a label header. Entries use the shortest round-trip form.
pub fn matrix_to_csv(x: &FiniteMetricSpace) -> String {
    let mut out = x.labels().join(",");
    out.push('\n');
    for i in 0..x.len() {
        let row: Vec<String> = x.row(i).iter().map(|d| d.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_to_json(x: &FiniteMetricSpace) -> String {
    let doc = JsonMatrixOut {
        labels: x.labels(),
        dist: x.rows(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("finite numbers serialize");
    s.push('\n');
    s
}

pub fn write_space(x: &FiniteMetricSpace, path: &Path) -> Result<()> {
    let json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"));
    let text = if json { matrix_to_json(x) } else { matrix_to_csv(x) };
    fs::write(path, text)?;
    Ok(())
}

/// `%.<sig>g`-style rendering: `sig` significant digits, trailing zeros
/// dropped, scientific notation outside `1e-4 <= |x| < 10^sig`.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let sig = sig.max(1);
    let sci = format!("{:.*e}", sig - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= sig as i32 {
        let mut out = trim_zeros(mantissa).to_owned();
        let _ = write!(out, "e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs());
        out
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_owned()
    }
}

/// Twelve significant digits, the output precision of the CLI.
pub fn fmt12(x: f64) -> String {
    format_sig(x, 12)
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}
