//! Reading point sets and matrices from JSON or headerless CSV.

use serde::Deserialize;
use serde_json::Value;
use tropfm::{parse_rational, PolytropeMatrix, Rational, SampleSet, Trop};

use crate::error::CliError;

/// Optional settings carried inside a JSON document. Command-line flags take
/// precedence.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputOptions {
    pub tol: Option<Value>,
    pub max_iter: Option<usize>,
    pub budget: Option<u64>,
    pub seed: Option<u64>,
}

impl InputOptions {
    pub fn tol(&self) -> Result<Option<Rational>, CliError> {
        self.tol
            .as_ref()
            .map(|v| scalar(v, "options.tol"))
            .transpose()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InputDocument {
    pub points: SampleSet,
    pub options: InputOptions,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    points: Vec<Vec<Value>>,
    #[serde(default)]
    options: InputOptions,
}

fn looks_like_json(text: &str) -> bool {
    matches!(text.trim_start().chars().next(), Some('{') | Some('['))
}

/// A JSON number or string holding a rational literal.
fn scalar(v: &Value, at: &str) -> Result<Rational, CliError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(CliError::Parse(format!("{at}: expected a number, found {other}"))),
    };
    parse_rational(&text).map_err(|e| CliError::Parse(format!("{at}: {e}")))
}

/// `{"points": [[...], ...], "options": {...}}`, a bare JSON array of
/// points, or CSV with one point per row.
pub fn parse_document(text: &str) -> Result<InputDocument, CliError> {
    let (rows, options) = if looks_like_json(text) {
        let raw: RawDocument = if text.trim_start().starts_with('[') {
            RawDocument {
                points: serde_json::from_str(text).map_err(json_error)?,
                options: InputOptions::default(),
            }
        } else {
            serde_json::from_str(text).map_err(json_error)?
        };
        let rows = raw
            .points
            .iter()
            .enumerate()
            .map(|(j, row)| {
                row.iter()
                    .enumerate()
                    .map(|(i, v)| scalar(v, &format!("points[{j}][{i}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        (rows, raw.options)
    } else {
        let rows = csv_rows(text)?
            .into_iter()
            .map(|(line, fields)| {
                fields
                    .iter()
                    .enumerate()
                    .map(|(i, f)| {
                        parse_rational(f).map_err(|e| CliError::Parse(format!("line {line}, field {}: {e}", i + 1)))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        (rows, InputOptions::default())
    };
    if rows.is_empty() {
        return Err(CliError::Parse("no points in input".into()));
    }
    let n = rows[0].len();
    if let Some(j) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::Parse(format!(
            "point {j} has {} coordinates, expected {n}",
            rows[j].len()
        )));
    }
    Ok(InputDocument {
        points: SampleSet::from_rows(rows)?,
        options,
    })
}

/// Headerless CSV records with their 1-based line numbers. Blank lines and
/// lines starting with `#` are skipped.
fn csv_rows(text: &str) -> Result<Vec<(u64, Vec<String>)>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut out = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| CliError::Parse(format!("csv: {e}")))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        out.push((line, rec.iter().map(str::to_string).collect()));
    }
    Ok(out)
}

fn json_error(e: serde_json::Error) -> CliError {
    // serde_json already reports "at line L column C"
    CliError::Parse(format!("json: {e}"))
}

fn matrix_entry(v: &Value, at: &str) -> Result<Trop<Rational>, CliError> {
    match v {
        Value::Null => Ok(Trop::NegInf),
        Value::String(s) if is_neg_inf(s) => Ok(Trop::NegInf),
        other => Ok(Trop::Finite(scalar(other, at)?)),
    }
}

fn is_neg_inf(s: &str) -> bool {
    matches!(s.trim(), "-inf" | "-Inf" | "-INF" | "−inf" | "-∞" | "−∞")
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMatrix {
    Object { n: usize, entries: Vec<Vec<Value>> },
    Rows(Vec<Vec<Value>>),
}

/// A square matrix as `{"n", "entries"}`, a JSON array of rows or CSV.
/// −∞ is written `null` in JSON and `-inf` in either format.
pub fn parse_matrix(text: &str) -> Result<PolytropeMatrix, CliError> {
    let rows = if looks_like_json(text) {
        let (expected, rows) = match serde_json::from_str(text).map_err(json_error)? {
            RawMatrix::Object { n, entries } => (Some(n), entries),
            RawMatrix::Rows(rows) => (None, rows),
        };
        if let Some(n) = expected.filter(|&n| n != rows.len()) {
            return Err(CliError::Parse(format!("matrix declares n = {n} but has {} rows", rows.len())));
        }
        rows.iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, v)| matrix_entry(v, &format!("entries[{i}][{j}]")))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?
    } else {
        csv_rows(text)?
            .into_iter()
            .map(|(line, fields)| {
                fields
                    .iter()
                    .enumerate()
                    .map(|(j, f)| {
                        if is_neg_inf(f) {
                            Ok(Trop::NegInf)
                        } else {
                            parse_rational(f)
                                .map(Trop::Finite)
                                .map_err(|e| CliError::Parse(format!("line {line}, field {}: {e}", j + 1)))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?
    };
    let n = rows.len();
    if let Some(i) = rows.iter().position(|r| r.len() != n) {
        return Err(CliError::Parse(format!("matrix row {i} has {} entries, expected {n}", rows[i].len())));
    }
    Ok(PolytropeMatrix::new(rows)?)
}

/// A point given on the command line as comma-separated rationals.
pub fn parse_vector(text: &str) -> Result<Vec<Rational>, CliError> {
    text.split(',')
        .enumerate()
        .map(|(i, f)| parse_rational(f).map_err(|e| CliError::Parse(format!("coordinate {}: {e}", i + 1))))
        .collect()
}
