//! Text formats for matrices and permutations.
//!
//! * binary matrix: a `rows cols` header, then `rows` lines of `cols` characters from `{0,1}`
//! * permutation: a single line of space-separated images, e.g. `1 4 3 2 5`
//! * d-dimensional permutation: a `d n` header, then `n` lines of `d` coordinates
//!
//! Blank lines are ignored; line numbers in diagnostics count every line.

use std::fmt;
use std::path::Path;

use crate::error::{Error, ParseErrorKind, Result};
use crate::highdim::DDimPermutation;
use crate::matrix::{BinaryMatrix, Permutation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Matrix(BinaryMatrix),
    Permutation(Permutation),
    DDim(DDimPermutation),
}

impl Parsed {
    pub fn kind(&self) -> &'static str {
        match self {
            Parsed::Matrix(_) => "matrix",
            Parsed::Permutation(_) => "permutation",
            Parsed::DDim(_) => "ddim",
        }
    }

    /// Two-dimensional view; permutations become their matrices.
    pub fn into_matrix(self) -> Result<BinaryMatrix> {
        match self {
            Parsed::Matrix(m) => Ok(m),
            Parsed::Permutation(p) => Ok(p.to_matrix()),
            Parsed::DDim(_) => Err(Error::InvalidArgument("expected a 2-dimensional matrix, got a d-dimensional one".into())),
        }
    }

    /// Accepts a permutation line or a permutation matrix.
    pub fn into_permutation(self) -> Result<Permutation> {
        match self {
            Parsed::Permutation(p) => Ok(p),
            Parsed::Matrix(m) => Permutation::from_matrix(&m),
            Parsed::DDim(_) => Err(Error::InvalidArgument("expected a permutation, got a d-dimensional one".into())),
        }
    }

    /// Accepts a d-dimensional file or a 2-dimensional permutation.
    pub fn into_ddim(self) -> Result<DDimPermutation> {
        match self {
            Parsed::DDim(p) => Ok(p),
            other => DDimPermutation::from_axes(&[other.into_permutation()?.images().to_vec()]),
        }
    }
}

impl fmt::Display for Parsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parsed::Matrix(m) => write!(f, "{m}"),
            Parsed::Permutation(p) => writeln!(f, "{p}"),
            Parsed::DDim(p) => write!(f, "{p}"),
        }
    }
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T> {
    Err(Error::Parse { line, kind })
}

// (1-based line number, trimmed content) of nonblank lines
fn lines(text: &str) -> Vec<(usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty()).collect()
}

fn integers(line: usize, s: &str) -> Result<Vec<i64>> {
    s.split_whitespace()
        .map(|t| t.parse::<i64>().or_else(|_| err(line, ParseErrorKind::NotInteger(t.to_string()))))
        .collect()
}

fn header(line: usize, s: &str) -> Result<(usize, usize)> {
    let parts: Vec<&str> = s.split_whitespace().collect();
    let bad = |msg: &str| err(line, ParseErrorKind::MalformedHeader(format!("{msg}, got {s:?}")));
    if parts.len() != 2 {
        return bad("expected two positive integers");
    }
    match (parts[0].parse::<usize>(), parts[1].parse::<usize>()) {
        (Ok(a), Ok(b)) if a > 0 && b > 0 => Ok((a, b)),
        _ => bad("expected two positive integers"),
    }
}

/// Detects the format: one line is a permutation, a header followed by
/// lines of bare digits is a matrix, anything else a d-dimensional permutation.
pub fn parse_text(text: &str) -> Result<Parsed> {
    let ls = lines(text);
    match ls.as_slice() {
        [] => err(1, ParseErrorKind::Empty),
        [_] => parse_permutation(text).map(Parsed::Permutation),
        [_, (_, second), ..] if second.split_whitespace().count() > 1 => parse_ddim(text).map(Parsed::DDim),
        _ => parse_matrix(text).map(Parsed::Matrix),
    }
}

pub fn parse_matrix(text: &str) -> Result<BinaryMatrix> {
    let ls = lines(text);
    let Some(&(hline, h)) = ls.first() else {
        return err(1, ParseErrorKind::Empty);
    };
    let (rows, cols) = header(hline, h)?;
    let body = &ls[1..];
    let mut bits = Vec::with_capacity(rows * cols);
    for &(line, s) in body.iter().take(rows) {
        let found = s.chars().count();
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                _ => return err(line, ParseErrorKind::BadCharacter { ch, column: i + 1 }),
            }
        }
        if found != cols {
            return err(line, ParseErrorKind::WrongLength { expected: cols, found });
        }
    }
    if body.len() != rows {
        let line = body.get(rows).map_or(ls.last().map_or(1, |l| l.0), |l| l.0);
        return err(line, ParseErrorKind::WrongLineCount { expected: rows, found: body.len() });
    }
    BinaryMatrix::from_bits(rows, cols, &bits)
}

pub fn parse_permutation(text: &str) -> Result<Permutation> {
    let ls = lines(text);
    let &(line, s) = match ls.as_slice() {
        [] => return err(1, ParseErrorKind::Empty),
        [one] => one,
        [_, (extra, _), ..] => return err(*extra, ParseErrorKind::WrongLineCount { expected: 0, found: ls.len() - 1 }),
    };
    let values = integers(line, s)?;
    let k = values.len();
    let mut seen = vec![false; k + 1];
    for &v in &values {
        if v < 1 || v as usize > k {
            return err(line, ParseErrorKind::OutOfRange { value: v, max: k });
        }
        if seen[v as usize] {
            return err(line, ParseErrorKind::NotBijective(format!("value {v} appears twice")));
        }
        seen[v as usize] = true;
    }
    Permutation::new(values.into_iter().map(|v| v as usize).collect())
}

pub fn parse_ddim(text: &str) -> Result<DDimPermutation> {
    let ls = lines(text);
    let Some(&(hline, h)) = ls.first() else {
        return err(1, ParseErrorKind::Empty);
    };
    let (d, n) = header(hline, h)?;
    if d < 2 {
        return err(hline, ParseErrorKind::MalformedHeader(format!("dimension must be at least 2, got {d}")));
    }
    let body = &ls[1..];
    if body.len() != n {
        let line = body.get(n).map_or(ls.last().map_or(1, |l| l.0), |l| l.0);
        return err(line, ParseErrorKind::WrongLineCount { expected: n, found: body.len() });
    }
    let mut seen = vec![vec![false; n + 1]; d];
    let mut points = Vec::with_capacity(n);
    for &(line, s) in body {
        let values = integers(line, s)?;
        if values.len() != d {
            return err(line, ParseErrorKind::WrongLength { expected: d, found: values.len() });
        }
        let mut p = Vec::with_capacity(d);
        for (a, &v) in values.iter().enumerate() {
            if v < 1 || v as usize > n {
                return err(line, ParseErrorKind::OutOfRange { value: v, max: n });
            }
            if seen[a][v as usize] {
                return err(line, ParseErrorKind::NotBijective(format!("coordinate {v} repeats on axis {}", a + 1)));
            }
            seen[a][v as usize] = true;
            p.push(v as usize);
        }
        points.push(p);
    }
    DDimPermutation::new(d, points)
}

pub fn parse_matrix_file(path: impl AsRef<Path>) -> Result<Parsed> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    parse_text(&text)
}
