//! Plain-text curve files: one point per line, comma or whitespace separated.

use std::io::Read;
use std::path::Path;

use cpack_core::{Curve, GeometryError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: invalid number {token:?}")]
    BadNumber { line: usize, token: String },
    #[error("line {line}: expected {expected} coordinates, found {found}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("degenerate curve")]
    Degenerate,
    #[error(transparent)]
    Geometry(GeometryError),
}

/// Parses curve text. Lines starting with `#` and blank lines are skipped.
pub fn parse_curve(text: &str) -> Result<Curve, ParseError> {
    let mut dim = 0;
    let mut coords = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut found = 0;
        for token in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v: f64 = token
                .parse()
                .ok()
                .filter(|v: &f64| v.is_finite())
                .ok_or_else(|| ParseError::BadNumber { line: i + 1, token: token.to_string() })?;
            coords.push(v);
            found += 1;
        }
        if dim == 0 {
            dim = found;
        } else if found != dim {
            return Err(ParseError::DimensionMismatch { line: i + 1, expected: dim, found });
        }
    }
    if dim == 0 {
        return Err(ParseError::Degenerate);
    }
    Curve::from_flat(dim, coords).map_err(|e| match e {
        GeometryError::DegenerateCurve => ParseError::Degenerate,
        other => ParseError::Geometry(other),
    })
}

pub fn parse_curve_reader(mut r: impl Read, name: &str) -> Result<Curve, ParseError> {
    let mut text = String::new();
    r.read_to_string(&mut text).map_err(|source| ParseError::Io { path: name.to_string(), source })?;
    parse_curve(&text)
}

pub fn parse_curve_file(path: &Path) -> Result<Curve, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_curve(&text)
}
