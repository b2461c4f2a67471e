//! The plain-text matrix format.
//!
//! ```text
//! # optional comment lines
//! q k n [modulus]
//! g11 g12 ... g1n
//! ...
//! gk1 gk2 ... gkn
//! ```
//!
//! `modulus` lists the coefficients of the monic defining polynomial, highest
//! degree first, one base-36 digit each (`111` is x^2 + x + 1 over GF(2)). It
//! is required when q is a proper prime power and rejected when q is prime.
//! Blank lines and lines starting with `#` are ignored. With n = 0 there are
//! no entry lines. [`write`] produces the canonical form, which [`parse`]
//! reads back to an identical matrix.

use std::fmt;

use crate::algebra::{prime_power, FieldSpec, Matrix};
use crate::error::Error;

/// A diagnostic anchored at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

fn number(line: usize, (col, tok): (usize, &str), what: &str) -> Result<u64, ParseError> {
    tok.parse()
        .map_err(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

/// Modulus digits (highest degree first) to coefficients (constant first).
pub fn parse_modulus(digits: &str) -> Option<Vec<u32>> {
    digits.chars().rev().map(|c| c.to_digit(36)).collect()
}

/// Coefficients (constant first) to digits (highest degree first).
pub fn format_modulus(coeffs: &[u32]) -> String {
    coeffs
        .iter()
        .rev()
        .map(|&c| char::from_digit(c, 36).expect("coefficient below 36"))
        .collect()
}

/// Field from an order and optional modulus digits, as in a header.
pub fn field_from_header(q: u64, modulus: Option<&str>) -> Result<FieldSpec, String> {
    let q32 = u32::try_from(q).map_err(|_| format!("field order {q} is too large"))?;
    let (p, m) = prime_power(q32).ok_or_else(|| format!("{q} is not a prime power"))?;
    let coeffs = match modulus {
        Some(d) => {
            if m == 1 {
                return Err(format!("GF({q}) is a prime field and takes no modulus"));
            }
            Some(parse_modulus(d).ok_or_else(|| format!("modulus `{d}` is not a digit string"))?)
        }
        None if m > 1 => return Err(format!("GF({q}) needs modulus digits")),
        None => None,
    };
    FieldSpec::new(p, m, coeffs.as_deref()).map_err(|e: Error| e.to_string())
}

/// Parses a matrix file.
pub fn parse(text: &str) -> Result<Matrix, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l)).filter(|(_, l)| {
        let t = l.trim_start();
        !t.is_empty() && !t.starts_with('#')
    });

    let (hl, header) = lines.next().ok_or_else(|| err(1, 1, "missing header line"))?;
    let toks = tokens(header);
    if !(3..=4).contains(&toks.len()) {
        return Err(err(hl, 1, "header must be `q k n [modulus]`"));
    }
    let q = number(hl, toks[0], "field order q")?;
    let k = number(hl, toks[1], "row count k")? as usize;
    let n = number(hl, toks[2], "column count n")? as usize;
    let modulus = toks.get(3).map(|t| t.1);
    let field = field_from_header(q, modulus).map_err(|m| {
        let col = toks.get(3).map_or(toks[0].0, |t| t.0);
        err(hl, col, m)
    })?;
    if k == 0 {
        return Err(err(hl, toks[1].0, "k must be positive"));
    }

    let mut entries = Vec::with_capacity(k * n);
    if n > 0 {
        for r in 0..k {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| err(text.lines().count() + 1, 1, format!("expected {k} rows, found {r}")))?;
            let toks = tokens(line);
            if toks.len() != n {
                let col = toks.get(n).map_or(line.chars().count() + 1, |t| t.0);
                return Err(err(ln, col, format!("expected {n} entries, found {}", toks.len())));
            }
            for tok in toks {
                let v = number(ln, tok, "field element")?;
                if v >= q {
                    return Err(err(ln, tok.0, format!("{v} is not an element of GF({q})")));
                }
                entries.push(field.element(v as u32).expect("checked against q"));
            }
        }
    }
    if let Some((ln, line)) = lines.next() {
        let col = tokens(line)[0].0;
        return Err(err(ln, col, "unexpected content after the last row"));
    }
    Ok(Matrix::new(&field, k, n, entries).expect("dimensions match entries"))
}

/// Canonical text of a matrix: header, then one line per row.
pub fn write(g: &Matrix) -> String {
    let f = g.field();
    let mut out = format!("{} {} {}", f.q(), g.rows(), g.cols());
    if !f.is_prime_field() {
        out.push(' ');
        out.push_str(&format_modulus(f.modulus()));
    }
    out.push('\n');
    if g.cols() > 0 {
        for row in g.row_values() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
    }
    out
}
