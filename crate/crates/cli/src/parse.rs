//! Curve description files.
//!
//! ```text
//! # the D7 singularity
//! name = D7
//! branches = 2
//! gen x = 0 ; t^2
//! gen y = t ; -t^5
//! box = 8
//! ```
//!
//! Each `gen` line lists one series per branch, separated by `;`. A series is
//! a sum of terms `c*t^e`, `c t^e`, `t^e`, `t` or the entry `0`, with exact
//! rational coefficients `p/q` and exponents at least 1.

use std::collections::BTreeSet;

use grnorm_core::series::Scalar;
use grnorm_core::{BranchSeries, MultiElement};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub label: String,
    pub branches: Vec<BranchSeries>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub name: String,
    pub branches: usize,
    pub generators: Vec<Generator>,
    pub provisional_box: Option<u32>,
}

impl CurveSpec {
    pub fn elements(&self) -> Vec<MultiElement> {
        self.generators.iter().map(|g| MultiElement::new(g.branches.clone())).collect()
    }
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError { line, column, message: message.into() }
}

/// Cursor over one line; columns are 1-based character positions.
struct Cursor {
    chars: Vec<char>,
    pos: usize,
    offset: usize,
    line: usize,
}

impl Cursor {
    fn new(src: &str, line: usize, offset: usize) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, offset, line }
    }

    fn column(&self) -> usize {
        self.offset + self.pos + 1
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        err(self.line, self.column(), message)
    }

    fn digits(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn coefficient(&mut self) -> Result<Option<Scalar>, ParseError> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num: BigInt = num.parse().expect("digits");
        if self.peek() != Some('/') {
            return Ok(Some(Scalar::from_integer(num)));
        }
        self.bump();
        let col = self.column();
        let den: BigInt = self.digits().ok_or_else(|| self.error("expected a denominator"))?.parse().expect("digits");
        if den.is_zero() {
            return Err(err(self.line, col, "zero denominator"));
        }
        Ok(Some(Scalar::new(num, den)))
    }

    /// `c`, `c*t^e`, `c t^e`, `t^e`, `t`.
    fn term(&mut self) -> Result<(u32, Scalar), ParseError> {
        self.skip_ws();
        let start = self.column();
        let coeff = self.coefficient()?;
        if self.peek() == Some('*') {
            if coeff.is_none() {
                return Err(self.error("unexpected '*'"));
            }
            self.bump();
            if self.peek() != Some('t') {
                return Err(self.error("expected 't' after '*'"));
            }
        }
        if self.peek() != Some('t') {
            return match coeff {
                Some(c) if c.is_zero() => Ok((0, c)),
                Some(_) => Err(err(self.line, start, "constant terms are not allowed; exponents must be at least 1")),
                None => Err(self.error("expected a term")),
            };
        }
        self.bump();
        let mut exponent = 1u32;
        if self.peek() == Some('^') {
            self.bump();
            let col = self.column();
            let e = self.digits().ok_or_else(|| self.error("expected an exponent"))?;
            exponent = e.parse().map_err(|_| err(self.line, col, "exponent too large"))?;
            if exponent == 0 {
                return Err(err(self.line, col, "exponents must be at least 1"));
            }
        }
        Ok((exponent, coeff.unwrap_or_else(|| Scalar::from_integer(1.into()))))
    }

    /// A signed sum of terms, up to `;` or the end of the line.
    fn series(&mut self) -> Result<BranchSeries, ParseError> {
        let mut terms = Vec::new();
        let mut first = true;
        loop {
            let mut sign = Scalar::from_integer(1.into());
            match self.peek() {
                Some('+') if !first => {
                    self.bump();
                }
                Some('-') => {
                    self.bump();
                    sign = -sign;
                }
                None | Some(';') if first => return Err(self.error("empty branch entry")),
                None | Some(';') => break,
                _ if !first => return Err(self.error("expected '+', '-' or ';'")),
                _ => {}
            }
            let (e, c) = self.term()?;
            terms.push((e, sign * c));
            first = false;
        }
        Ok(BranchSeries::from_terms(terms, grnorm_core::Precision::Exact))
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

pub fn parse_curve(src: &str) -> Result<CurveSpec, ParseError> {
    let mut name = None;
    let mut branches: Option<usize> = None;
    let mut provisional_box = None;
    let mut raw_gens: Vec<(usize, usize, String, String)> = Vec::new(); // line, '=' column, label, text
    let mut labels = BTreeSet::new();
    for (idx, raw) in src.lines().enumerate() {
        let line_no = idx + 1;
        let line = strip_comment(raw);
        if line.trim().is_empty() {
            continue;
        }
        let Some(eq) = line.find('=') else {
            let col = line.len() - line.trim_start().len() + 1;
            return Err(err(line_no, col, "expected 'key = value'"));
        };
        let key = line[..eq].trim();
        let value_start = eq + 1 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
        let value = line[eq + 1..].trim();
        let key_col = line.len() - line.trim_start().len() + 1;
        let value_col = line[..value_start].chars().count() + 1;
        let mut words = key.split_whitespace();
        match (words.next(), words.next(), words.next()) {
            (Some("name"), None, _) => name = Some(value.to_string()),
            (Some("branches"), None, _) => {
                let s: usize = value.parse().map_err(|_| err(line_no, value_col, "expected a branch count"))?;
                if s == 0 {
                    return Err(err(line_no, value_col, "a curve needs at least one branch"));
                }
                branches = Some(s);
            }
            (Some("box"), None, _) => {
                let b: u32 = value.parse().map_err(|_| err(line_no, value_col, "expected a box size"))?;
                provisional_box = Some(b);
            }
            (Some("gen"), Some(label), None) => {
                if !labels.insert(label.to_string()) {
                    return Err(err(line_no, key_col, format!("generator '{label}' defined twice")));
                }
                raw_gens.push((line_no, eq + 1, label.to_string(), line[eq + 1..].to_string()));
            }
            _ => return Err(err(line_no, key_col, format!("unknown key '{key}'"))),
        }
    }
    let last_line = src.lines().count().max(1);
    let s = branches.ok_or_else(|| err(last_line, 1, "missing 'branches = N'"))?;
    if raw_gens.is_empty() {
        return Err(err(last_line, 1, "no generators given"));
    }
    let mut generators = Vec::new();
    for (line_no, eq_col, label, text) in raw_gens {
        let mut cur = Cursor::new(&text, line_no, eq_col);
        let mut series = vec![cur.series()?];
        while cur.peek() == Some(';') {
            cur.bump();
            series.push(cur.series()?);
        }
        if series.len() != s {
            return Err(err(line_no, eq_col + 1, format!("generator '{label}' has {} branch entries, expected {s}", series.len())));
        }
        generators.push(Generator { label, branches: series });
    }
    Ok(CurveSpec { name: name.unwrap_or_else(|| "curve".to_string()), branches: s, generators, provisional_box })
}

#[cfg(test)]
fn format_series(s: &BranchSeries) -> String {
    let mut out = String::new();
    for (e, c) in s.terms() {
        let negative = c < &Scalar::zero();
        let mag = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let one = Scalar::from_integer(1.into());
        if mag != one {
            out.push_str(&format!("{mag}*"));
        }
        if e == 1 {
            out.push('t');
        } else {
            out.push_str(&format!("t^{e}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Writes a curve description back in the file syntax.
#[cfg(test)]
pub fn format_curve(spec: &CurveSpec) -> String {
    let mut out = format!("name = {}\nbranches = {}\n", spec.name, spec.branches);
    for g in &spec.generators {
        let entries: Vec<String> = g.branches.iter().map(format_series).collect();
        out.push_str(&format!("gen {} = {}\n", g.label, entries.join(" ; ")));
    }
    if let Some(b) = spec.provisional_box {
        out.push_str(&format!("box = {b}\n"));
    }
    out
}
