//! Text, JSON and CSV encodings of triangles.
//!
//! Plain rows: one row per line, base-10 integers separated by spaces or
//! tabs, row `n` holding `n + 1` entries. Blank lines and lines starting with
//! `#` are skipped.
//!
//! JSON: `{"rows": [[1], [1, 1], ...]}`. Integers outside the signed 64-bit
//! range are written as strings; the reader accepts either form.
//!
//! CSV: a `n,r,k,value` header followed by one record per entry, in row-major
//! order.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::triangle::{GridError, TriangleGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputFormat {
    PlainRows,
    Json,
}

impl InputFormat {
    /// JSON when the first non-blank character opens an object.
    pub fn detect(text: &str) -> Self {
        match text.trim_start().chars().next() {
            Some('{') => Self::Json,
            _ => Self::PlainRows,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{}{message}", line.map(|l| format!("line {l}: ")).unwrap_or_default())]
pub struct ParseError {
    /// 1-based line of the input the problem was found on, when known.
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            message: message.into(),
        }
    }

    fn general(message: impl Into<String>) -> Self {
        Self {
            line: None,
            message: message.into(),
        }
    }
}

fn parse_integer(token: &str) -> Option<BigInt> {
    let digits = token.strip_prefix('-').unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

pub fn parse_plain(text: &str) -> Result<TriangleGrid, ParseError> {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let row = trimmed
            .split([' ', '\t'])
            .filter(|t| !t.is_empty())
            .map(|t| parse_integer(t).ok_or_else(|| ParseError::at(line_no, format!("`{t}` is not an integer"))))
            .collect::<Result<Vec<_>, _>>()?;
        let expected = rows.len() + 1;
        if row.len() != expected {
            return Err(ParseError::at(
                line_no,
                format!("row {} has {} entries, expected {expected}", rows.len(), row.len()),
            ));
        }
        rows.push(row);
    }
    TriangleGrid::from_rows(rows).map_err(|e| match e {
        GridError::Empty => ParseError::general("no rows found"),
        other => ParseError::general(other.to_string()),
    })
}

fn json_integer(value: &Value) -> Option<BigInt> {
    match value {
        Value::Number(n) => parse_integer(&n.to_string()),
        Value::String(s) => parse_integer(s),
        _ => None,
    }
}

pub fn parse_json(text: &str) -> Result<TriangleGrid, ParseError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| ParseError::at(e.line(), e.to_string()))?;
    let rows = doc
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| ParseError::general("expected an object with a \"rows\" array"))?;
    let mut out = Vec::with_capacity(rows.len());
    for (n, row) in rows.iter().enumerate() {
        let row = row
            .as_array()
            .ok_or_else(|| ParseError::general(format!("row {n} is not an array")))?;
        if row.len() != n + 1 {
            return Err(ParseError::general(format!(
                "row {n} has {} entries, expected {}",
                row.len(),
                n + 1
            )));
        }
        let values = row
            .iter()
            .enumerate()
            .map(|(j, v)| {
                json_integer(v).ok_or_else(|| ParseError::general(format!("row {n}, entry {j}: `{v}` is not an integer")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(values);
    }
    TriangleGrid::from_rows(out).map_err(|_| ParseError::general("no rows found"))
}

pub fn parse_triangle(text: &str) -> Result<TriangleGrid, ParseError> {
    match InputFormat::detect(text) {
        InputFormat::PlainRows => parse_plain(text),
        InputFormat::Json => parse_json(text),
    }
}

/// Small integers become JSON numbers, anything wider becomes a string.
pub fn integer_to_json(value: &BigInt) -> Value {
    match value.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(value.to_string()),
    }
}

pub fn to_plain(grid: &TriangleGrid) -> String {
    let mut out = grid.to_string();
    out.push('\n');
    out
}

pub fn to_json_value(grid: &TriangleGrid) -> Value {
    let rows = grid
        .rows()
        .iter()
        .map(|row| Value::Array(row.iter().map(integer_to_json).collect()))
        .collect();
    let mut obj = Map::new();
    obj.insert("rows".into(), Value::Array(rows));
    Value::Object(obj)
}

pub fn to_json(grid: &TriangleGrid) -> String {
    let mut out = to_json_value(grid).to_string();
    out.push('\n');
    out
}

pub fn to_csv(grid: &TriangleGrid) -> String {
    let mut out = String::from("n,r,k,value\n");
    for (r, k, value) in grid.cells() {
        let _ = writeln!(out, "{},{r},{k},{value}", r + k);
    }
    out
}
