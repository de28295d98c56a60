//! Plain-text matrix files: one row per line, whitespace separated,
//! `#` starts a comment. Entries are integers, `p/q` rationals or decimals.

use std::path::Path;

use minflat_core::linalg::{IntMatrix, SymMatrix};
use minflat_core::scalar::rational::parse_rational;
use minflat_core::scalar::Scalar;

use crate::Failure;

fn rows(text: &str) -> Vec<Vec<&str>> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .map(|l| l.split_whitespace().collect::<Vec<_>>())
        .filter(|r| !r.is_empty())
        .collect()
}

pub fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}

/// Exact when the token is an integer or `p/q`, floating point otherwise.
pub fn parse_scalar(tok: &str) -> Result<Scalar, Failure> {
    if let Ok(r) = parse_rational(tok) {
        return Ok(Scalar::from(r));
    }
    match tok.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(Scalar::Float(x)),
        _ => Err(Failure::parse(format!("invalid number `{tok}`"))),
    }
}

pub fn parse_sym(text: &str) -> Result<SymMatrix<Scalar>, Failure> {
    let r = rows(text);
    let n = r.len();
    if n == 0 {
        return Err(Failure::parse("empty matrix"));
    }
    let mut out = Vec::with_capacity(n);
    for (i, row) in r.iter().enumerate() {
        if row.len() != n {
            return Err(Failure::parse(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                row.len()
            )));
        }
        out.push(
            row.iter()
                .map(|t| parse_scalar(t))
                .collect::<Result<Vec<_>, _>>()?,
        );
    }
    for (i, row) in out.iter().enumerate() {
        for (j, v) in row.iter().enumerate().take(i) {
            if *v != out[j][i] {
                return Err(Failure::parse(format!(
                    "matrix is not symmetric at ({}, {})",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    SymMatrix::from_rows(&out).map_err(|e| Failure::parse(e.to_string()))
}

/// `I<n>` names the identity; anything else is a file.
pub fn load_gram(arg: &str) -> Result<SymMatrix<Scalar>, Failure> {
    if let Some(n) = arg.strip_prefix('I').and_then(|s| s.parse::<usize>().ok()) {
        if n == 0 {
            return Err(Failure::usage("I0 is not a Gram matrix"));
        }
        return Ok(SymMatrix::identity(n));
    }
    parse_sym(&read(Path::new(arg))?)
}

/// n rows of integers; column j is the frequency vector Y_j.
pub fn parse_int_matrix(text: &str) -> Result<IntMatrix, Failure> {
    let r = rows(text);
    let parsed = r
        .iter()
        .map(|row| {
            row.iter()
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Failure::parse(format!("invalid integer `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(Failure::parse("empty matrix"));
    }
    IntMatrix::from_rows(&parsed).map_err(|e| Failure::parse(e.to_string()))
}
