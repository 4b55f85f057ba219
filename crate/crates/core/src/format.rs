//! Rendering shared by the CLI: paper-style text, JSON and CSV.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact_linalg::IntMatrix;
use crate::lambda_ring::RingElement;
use crate::partitions::{BasisOrder, ModeKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Paper,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" | "text" => Ok(OutputFormat::Paper),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::invalid(format!("unknown format {s:?}"))),
        }
    }
}

/// A JSON number with the exact decimal digits of `x`.
pub fn json_int(x: &BigInt) -> Value {
    let n: serde_json::Number = x.to_string().parse().expect("integer literal");
    Value::Number(n)
}

fn basis_json(basis: &BasisOrder) -> Value {
    Value::Array(
        (0..basis.len())
            .map(|i| json!(basis.printed(i).parts()))
            .collect(),
    )
}

fn mode_str(kind: ModeKind) -> &'static str {
    match kind {
        ModeKind::M => "M",
        ModeKind::GL => "GL",
    }
}

/// `{"n", "mode", "basis", "rows": [{"label", "coords"}]}`.
pub fn rows_json(basis: &BasisOrder, rows: &[(String, &RingElement)]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|(label, e)| {
            let coords: Vec<Value> = e.to_coordinates().iter().map(json_int).collect();
            json!({ "label": label, "coords": coords })
        })
        .collect();
    json!({
        "n": basis.n,
        "mode": mode_str(basis.kind),
        "basis": basis_json(basis),
        "rows": rows,
    })
}

/// `{"n", "mode", "basis", "entries": [[..], ..]}`, row-major.
pub fn matrix_json(basis: &BasisOrder, m: &IntMatrix) -> Value {
    let entries: Vec<Value> = (0..m.rows())
        .map(|i| Value::Array(m.row(i).iter().map(json_int).collect()))
        .collect();
    json!({
        "n": basis.n,
        "mode": mode_str(basis.kind),
        "basis": basis_json(basis),
        "entries": entries,
    })
}

fn csv_string(records: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in records {
        w.write_record(&r).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Header row of basis labels, then one row per element.
pub fn rows_csv(basis: &BasisOrder, first_column: &str, rows: &[(String, &RingElement)]) -> Result<String> {
    let mut records = Vec::with_capacity(rows.len() + 1);
    let mut header = vec![first_column.to_string()];
    header.extend(basis.labels());
    records.push(header);
    for (label, e) in rows {
        let mut r = vec![label.clone()];
        r.extend(e.to_coordinates().iter().map(ToString::to_string));
        records.push(r);
    }
    csv_string(records)
}

pub fn matrix_csv(basis: &BasisOrder, m: &IntMatrix) -> Result<String> {
    let labels = basis.labels();
    let mut records = Vec::with_capacity(m.rows() + 1);
    let mut header = vec!["row".to_string()];
    header.extend(labels.iter().cloned());
    records.push(header);
    for i in 0..m.rows() {
        let mut r = vec![labels.get(i).cloned().unwrap_or_else(|| i.to_string())];
        r.extend(m.row(i).iter().map(ToString::to_string));
        records.push(r);
    }
    csv_string(records)
}

/// Right-aligned text grid.
pub fn matrix_grid(m: &IntMatrix) -> String {
    let cells: Vec<Vec<String>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let width = cells
        .iter()
        .flatten()
        .map(String::len)
        .max()
        .unwrap_or(1);
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}
