//! Text and JSON encodings of a square.
//!
//! Text: the first line holds the order `n`, followed by `n` lines of `n`
//! space-separated decimal integers, each line newline-terminated.
//!
//! JSON: `{"n": <int>, "cells": [[row 1], [row 2], ...]}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::square::Square;

/// Largest order accepted from untrusted input.
pub const MAX_PARSE_ORDER: usize = 1024;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_value(tok: &str, line: usize) -> Result<u32> {
    if tok.is_empty() || !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(line, format!("not a decimal integer: {tok:?}")));
    }
    let v: u32 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("value out of range: {tok}")))?;
    if v == 0 {
        return Err(parse_err(line, "cell values must be positive"));
    }
    Ok(v)
}

pub fn parse_text(input: &str) -> Result<Square> {
    let body = input.strip_suffix('\n').unwrap_or(input);
    let mut lines = body.split('\n');
    let header = lines.next().unwrap_or("").trim();
    if header.is_empty() || !header.bytes().all(|b| b.is_ascii_digit()) {
        return Err(parse_err(1, format!("expected the order, got {header:?}")));
    }
    let n: usize = header
        .parse()
        .map_err(|_| parse_err(1, "order out of range"))?;
    if n == 0 {
        return Err(parse_err(1, "order must be at least 1"));
    }
    if n > MAX_PARSE_ORDER {
        return Err(parse_err(1, format!("order {n} exceeds {MAX_PARSE_ORDER}")));
    }
    let mut cells = Vec::with_capacity(n * n);
    for row in 0..n {
        let line_no = row + 2;
        let line = lines
            .next()
            .ok_or_else(|| parse_err(line_no, format!("expected {n} rows, got {row}")))?;
        let before = cells.len();
        for tok in line.split_ascii_whitespace() {
            if cells.len() - before == n {
                return Err(parse_err(line_no, format!("row has more than {n} values")));
            }
            cells.push(parse_value(tok, line_no)?);
        }
        let got = cells.len() - before;
        if got != n {
            return Err(parse_err(
                line_no,
                format!("row has {got} values, expected {n}"),
            ));
        }
    }
    if lines.next().is_some() {
        return Err(parse_err(n + 2, "unexpected content after the last row"));
    }
    Square::new(n, cells)
}

pub fn to_text(square: &Square) -> String {
    square.to_string()
}

#[derive(Serialize, Deserialize)]
struct SquareJson {
    n: usize,
    cells: Vec<Vec<u32>>,
}

pub(crate) fn rows_to_square(n: usize, rows: &[Vec<u32>], line: usize) -> Result<Square> {
    if n == 0 {
        return Err(parse_err(line, "order must be at least 1"));
    }
    if rows.len() != n {
        return Err(parse_err(
            line,
            format!("\"n\" is {n} but cells has {} rows", rows.len()),
        ));
    }
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(parse_err(
            line,
            format!("row {} has {} values, expected {n}", i + 1, r.len()),
        ));
    }
    if rows.iter().flatten().any(|&v| v == 0) {
        return Err(parse_err(line, "cell values must be positive"));
    }
    Square::from_rows(rows)
}

pub fn parse_json(input: &str) -> Result<Square> {
    let parsed: SquareJson =
        serde_json::from_str(input.trim()).map_err(|e| parse_err(e.line(), e.to_string()))?;
    rows_to_square(parsed.n, &parsed.cells, 1)
}

/// Single-line JSON encoding, without a trailing newline.
pub fn to_json(square: &Square) -> String {
    serde_json::to_string(&SquareJson {
        n: square.order(),
        cells: square.to_rows(),
    })
    .expect("squares always serialize")
}

/// Parses either encoding: input whose first non-blank character is `{` is
/// read as JSON, anything else as text.
pub fn parse_any(input: &str) -> Result<Square> {
    if input.trim_start().starts_with('{') {
        parse_json(input)
    } else {
        parse_text(input)
    }
}
