//! Reader for user-supplied Hermite data files.
//!
//! The format is a strict CSV: a header `x,f0,...,fK`, then one row per
//! node with the node position and the derivative values of orders 0..=K.
//! Nodes must be strictly ascending, equispaced, and span [-1, 1]; data on
//! another interval must be pulled back with the domain mapping helpers
//! first.

use std::path::{Path, PathBuf};
use thiserror::Error;

/// Relative tolerance for the equispacing and span checks.
pub const GRID_REL_TOL: f64 = 1e-12;

/// Problems with a fit input file; they all map to process exit code 3.
#[derive(Debug, Error)]
pub enum FitFileError {
    #[error("cannot read fit file {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("fit file is not valid UTF-8")]
    NotUtf8,
    #[error("fit file uses CR line endings; convert it to plain LF first")]
    CrlfLineEnding,
    #[error("malformed header '{got}': expected 'x,f0,...,fK'")]
    MalformedHeader { got: String },
    #[error("file provides derivative orders up to {have}, but the requested fit needs orders up to {need}")]
    MissingDerivatives { have: usize, need: usize },
    #[error("line {line}: expected {expected} comma-separated numeric fields")]
    MalformedRow { line: usize, expected: usize },
    #[error("line {line}: non-finite value")]
    NonFiniteValue { line: usize },
    #[error("line {line}: node positions must be strictly ascending")]
    NotAscending { line: usize },
    #[error("grid is not equispaced: spacing changes at interval {index}")]
    NotEquispaced { index: usize },
    #[error("grid must span [-1, 1]; rescale the data with the domain mapping helpers first")]
    SpanMismatch,
    #[error("fit file needs at least two data rows")]
    TooFewRows,
}

/// Validated contents of a fit file, restricted to the requested order.
#[derive(Debug, Clone, PartialEq)]
pub struct FitInput {
    /// Grid order: number of nodes minus one.
    pub n: usize,
    /// Node positions, ascending.
    pub grid: Vec<f64>,
    /// values[l][i] is the order-l derivative at grid[i], for l = 0..=k.
    pub values: Vec<Vec<f64>>,
}

/// Reads and validates a fit file, keeping derivative orders 0..=k.
pub fn read_fit_file(path: &Path, k: usize) -> Result<FitInput, FitFileError> {
    let bytes = std::fs::read(path).map_err(|source| FitFileError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|_| FitFileError::NotUtf8)?;
    parse_fit_text(&text, k)
}

fn parse_fit_text(text: &str, k: usize) -> Result<FitInput, FitFileError> {
    if text.contains('\r') {
        return Err(FitFileError::CrlfLineEnding);
    }
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(FitFileError::TooFewRows)?;
    let columns = parse_header(header)?;
    if columns < k + 1 {
        return Err(FitFileError::MissingDerivatives {
            have: columns - 1,
            need: k,
        });
    }

    let mut grid: Vec<f64> = Vec::new();
    let mut values: Vec<Vec<f64>> = vec![Vec::new(); k + 1];
    for (idx, raw) in lines {
        let line = idx + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<f64> = raw
            .split(',')
            .map(|tok| tok.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| FitFileError::MalformedRow {
                line,
                expected: columns + 1,
            })?;
        if fields.len() != columns + 1 {
            return Err(FitFileError::MalformedRow {
                line,
                expected: columns + 1,
            });
        }
        if fields.iter().any(|v| !v.is_finite()) {
            return Err(FitFileError::NonFiniteValue { line });
        }
        if let Some(&prev) = grid.last() {
            if fields[0] <= prev {
                return Err(FitFileError::NotAscending { line });
            }
        }
        grid.push(fields[0]);
        for l in 0..=k {
            values[l].push(fields[l + 1]);
        }
    }

    if grid.len() < 2 {
        return Err(FitFileError::TooFewRows);
    }
    let n = grid.len() - 1;
    let h = grid[1] - grid[0];
    for i in 1..n {
        if ((grid[i + 1] - grid[i]) - h).abs() > GRID_REL_TOL * h.abs() {
            return Err(FitFileError::NotEquispaced { index: i });
        }
    }
    if (grid[0] + 1.0).abs() > GRID_REL_TOL || (grid[n] - 1.0).abs() > GRID_REL_TOL {
        return Err(FitFileError::SpanMismatch);
    }
    Ok(FitInput { n, grid, values })
}

/// Checks the header is exactly `x,f0,...,fK` and returns K + 1.
fn parse_header(header: &str) -> Result<usize, FitFileError> {
    let malformed = || FitFileError::MalformedHeader {
        got: header.to_string(),
    };
    let tokens: Vec<&str> = header.split(',').map(str::trim).collect();
    if tokens.len() < 2 || tokens[0] != "x" {
        return Err(malformed());
    }
    for (i, tok) in tokens[1..].iter().enumerate() {
        if **tok != format!("f{i}") {
            return Err(malformed());
        }
    }
    Ok(tokens.len() - 1)
}
