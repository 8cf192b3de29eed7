//! Text and JSON matrix input.
//!
//! Plain text holds `p` rows of `p` whitespace-separated entries. An entry is
//! an integer (`-3`), a fraction (`3/4`) or a decimal (`1.5`, `-.25`,
//! `2.5e-3`); every such token is an exact rational. JSON input is an object
//! `{"p": 2, "rows": [[1, "-1/2"], ["-1/2", 1]]}` whose entries are numbers
//! or strings in the same grammar.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Zero};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::numerics::{Mode, Scalar, SymMatrix, TolerancePolicy};

const MAX_EXPONENT: u32 = 400;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ParseOptions {
    /// Forces a mode; `None` keeps exact arithmetic for rational input.
    pub mode: Option<Mode>,
    pub policy: TolerancePolicy,
}

pub fn parse_matrix(text: &str) -> Result<SymMatrix> {
    parse_matrix_with(text, &ParseOptions::default())
}

pub fn parse_matrix_with(text: &str, options: &ParseOptions) -> Result<SymMatrix> {
    let rows = if text.trim_start().starts_with('{') {
        parse_json_rows(text)?
    } else {
        parse_text_rows(text)?
    };
    let rows = match options.mode {
        Some(mode) => rows
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.to_mode(mode)).collect())
            .collect(),
        None => rows,
    };
    SymMatrix::from_rows(rows, options.policy)
}

fn parse_text_rows(text: &str) -> Result<Vec<Vec<Scalar>>> {
    let rows: Vec<Vec<Scalar>> = text
        .lines()
        .map(|line| line.split('#').next().unwrap_or("").trim())
        .filter(|line| !line.is_empty())
        .enumerate()
        .map(|(r, line)| {
            line.split_whitespace()
                .enumerate()
                .map(|(c, token)| {
                    parse_scalar(token).ok_or_else(|| Error::Parse {
                        row: r + 1,
                        column: c + 1,
                        message: format!("cannot parse `{token}` as a number"),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::Parse {
            row: 1,
            column: 1,
            message: "no matrix rows found".into(),
        });
    }
    check_square(&rows)?;
    Ok(rows)
}

fn check_square(rows: &[Vec<Scalar>]) -> Result<()> {
    let p = rows.len();
    for (r, row) in rows.iter().enumerate() {
        if row.len() != p {
            return Err(Error::Parse {
                row: r + 1,
                column: row.len().min(p) + 1,
                message: format!("expected {p} entries in every row, found {}", row.len()),
            });
        }
    }
    Ok(())
}

#[derive(Deserialize)]
struct JsonMatrix {
    p: usize,
    rows: Vec<Vec<serde_json::Value>>,
}

fn parse_json_rows(text: &str) -> Result<Vec<Vec<Scalar>>> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| Error::Parse {
        row: e.line(),
        column: e.column(),
        message: format!("invalid JSON matrix: {e}"),
    })?;
    if doc.rows.len() != doc.p {
        return Err(Error::Parse {
            row: doc.rows.len().min(doc.p) + 1,
            column: 1,
            message: format!("`p` is {} but {} rows were given", doc.p, doc.rows.len()),
        });
    }
    let rows: Vec<Vec<Scalar>> = doc
        .rows
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .enumerate()
                .map(|(c, value)| {
                    let token = match value {
                        serde_json::Value::Number(n) => n.to_string(),
                        serde_json::Value::String(s) => s.clone(),
                        _ => String::new(),
                    };
                    parse_scalar(&token).ok_or_else(|| Error::Parse {
                        row: r + 1,
                        column: c + 1,
                        message: format!("cannot parse `{value}` as a number"),
                    })
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    check_square(&rows)?;
    Ok(rows)
}

/// Parses one entry into an exact rational.
pub fn parse_scalar(token: &str) -> Option<Scalar> {
    parse_rational(token.trim()).map(Scalar::Exact)
}

fn parse_rational(token: &str) -> Option<BigRational> {
    if let Some((numer, denom)) = token.split_once('/') {
        let numer: BigInt = parse_integer(numer)?;
        let denom: BigInt = parse_integer(denom)?;
        return (!denom.is_zero()).then(|| BigRational::new(numer, denom));
    }
    let (mantissa, exponent) = match token.find(['e', 'E']) {
        Some(i) => (&token[..i], token[i + 1..].parse::<i32>().ok()?),
        None => (token, 0),
    };
    if exponent.unsigned_abs() > MAX_EXPONENT {
        return None;
    }
    let (negative, digits) = match mantissa.as_bytes().first()? {
        b'-' => (true, &mantissa[1..]),
        b'+' => (false, &mantissa[1..]),
        _ => (false, mantissa),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole
        .bytes()
        .chain(frac.bytes())
        .all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let numer: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = exponent - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(numer);
    if scale >= 0 {
        value *= BigRational::from_integer(Pow::pow(&ten, scale as u32));
    } else {
        value /= BigRational::from_integer(Pow::pow(&ten, scale.unsigned_abs()));
    }
    Some(if negative { -value } else { value })
}

fn parse_integer(text: &str) -> Option<BigInt> {
    let text = text.trim();
    let digits = text.strip_prefix(['-', '+']).unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.strip_prefix('+').unwrap_or(text).parse().ok()
}

/// Parses a whitespace-separated vector (e.g. a query point).
pub fn parse_vector(text: &str) -> Result<Vec<Scalar>> {
    text.split_whitespace()
        .enumerate()
        .map(|(c, token)| {
            parse_scalar(token).ok_or_else(|| Error::Parse {
                row: 1,
                column: c + 1,
                message: format!("cannot parse `{token}` as a number"),
            })
        })
        .collect()
}

/// Plain-text rendering accepted by [`parse_matrix`].
pub fn format_matrix(x: &SymMatrix) -> String {
    let mut out = String::new();
    for k in 0..x.dim() {
        let line: Vec<String> = x.row(k).iter().map(ToString::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
