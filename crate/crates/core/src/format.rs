//! The `intcomplex v1` text format.
//!
//! ```text
//! intcomplex v1
//! # comment
//! a 1
//! (a,b) 2.5
//! ```
//!
//! Weights are optional, but a file that weights one line must weight all.

use std::collections::HashMap;
use std::fmt::Write as _;

use num::BigRational;
use thiserror::Error;

use crate::complex::IntComplex;
use crate::interaction::{Interaction, InteractionError};
use crate::numeric;
use crate::persistence::WeightedIntComplex;

pub const HEADER: &str = "intcomplex v1";

/// Error with a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct FormatError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl FormatError {
    fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        FormatError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexFile {
    Plain(IntComplex),
    Weighted(WeightedIntComplex),
}

impl ComplexFile {
    pub fn complex(&self) -> &IntComplex {
        match self {
            ComplexFile::Plain(c) => c,
            ComplexFile::Weighted(w) => w.complex(),
        }
    }

    pub fn weighted(&self) -> Option<&WeightedIntComplex> {
        match self {
            ComplexFile::Plain(_) => None,
            ComplexFile::Weighted(w) => Some(w),
        }
    }
}

struct Entry {
    line: usize,
    interaction: Interaction,
    weight: Option<BigRational>,
}

/// Content lines as `(line number, text without comment, column offset)`.
fn content_lines(text: &str, skip: usize) -> impl Iterator<Item = (usize, &str, usize)> {
    text.lines().enumerate().skip(skip).filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let indent = body.len() - trimmed.len();
        let trimmed = trimmed.trim_end();
        (!trimmed.is_empty()).then_some((i + 1, trimmed, indent))
    })
}

fn interaction_error(line: usize, indent: usize, e: InteractionError) -> FormatError {
    match e {
        InteractionError::Syntax { offset, message } => FormatError::new(line, indent + offset + 1, message),
        other => FormatError::new(line, indent + 1, other.to_string()),
    }
}

fn parse_entries(text: &str) -> Result<Vec<Entry>, FormatError> {
    let first = text.lines().next().unwrap_or("");
    if first.trim_end() != HEADER {
        return Err(FormatError::new(1, 1, format!("expected header {HEADER:?}")));
    }
    let mut entries = Vec::new();
    for (line, body, indent) in content_lines(text, 1) {
        let (interaction, end) =
            Interaction::parse_prefix(body).map_err(|e| interaction_error(line, indent, e))?;
        let rest = &body[end..];
        let weight_text = rest.trim_start();
        let weight_column = indent + end + (rest.len() - weight_text.len()) + 1;
        let weight = if weight_text.is_empty() {
            None
        } else {
            if !rest.starts_with(char::is_whitespace) {
                return Err(FormatError::new(line, weight_column, "expected whitespace before the weight"));
            }
            if weight_text.contains(char::is_whitespace) {
                return Err(FormatError::new(line, weight_column, "expected at most one weight"));
            }
            Some(numeric::parse_decimal(weight_text).ok_or_else(|| {
                FormatError::new(line, weight_column, format!("invalid weight {weight_text:?}"))
            })?)
        };
        entries.push(Entry {
            line,
            interaction,
            weight,
        });
    }
    if entries.is_empty() {
        let lines = text.lines().count().max(1);
        return Err(FormatError::new(lines, 1, "complex has no interactions"));
    }
    Ok(entries)
}

pub fn parse_complex_file(text: &str) -> Result<ComplexFile, FormatError> {
    let entries = parse_entries(text)?;
    let weighted = entries.iter().find(|e| e.weight.is_some());
    let Some(first_weighted) = weighted else {
        let complex = IntComplex::new(entries.into_iter().map(|e| e.interaction))
            .expect("at least one entry");
        return Ok(ComplexFile::Plain(complex));
    };
    if let Some(missing) = entries.iter().find(|e| e.weight.is_none()) {
        return Err(FormatError::new(
            missing.line,
            1,
            format!("missing weight (line {} is weighted, so every line must be)", first_weighted.line),
        ));
    }
    let mut seen: HashMap<&Interaction, &BigRational> = HashMap::new();
    for e in &entries {
        let w = e.weight.as_ref().expect("checked above");
        if seen.insert(&e.interaction, w).is_some_and(|old| old != w) {
            return Err(FormatError::new(e.line, 1, format!("{} has two different weights", e.interaction)));
        }
    }
    let weighted = WeightedIntComplex::new(
        entries
            .into_iter()
            .map(|e| (e.interaction, e.weight.expect("checked above"))),
    )
    .expect("weights are consistent");
    Ok(ComplexFile::Weighted(weighted))
}

/// One interaction per line; blank lines and `#` comments are skipped and
/// no header is expected.
pub fn parse_interaction_list(text: &str) -> Result<Vec<Interaction>, FormatError> {
    content_lines(text, 0)
        .map(|(line, body, indent)| {
            Interaction::parse(body).map_err(|e| interaction_error(line, indent, e))
        })
        .collect()
}

pub fn write_complex(complex: &IntComplex) -> String {
    let mut out = format!("{HEADER}\n");
    for sigma in complex.iter() {
        writeln!(out, "{sigma}").expect("string write");
    }
    out
}

/// `None` if some weight has no finite decimal expansion.
pub fn write_weighted(weighted: &WeightedIntComplex) -> Option<String> {
    let mut out = format!("{HEADER}\n");
    for (sigma, w) in weighted.iter() {
        let w = numeric::terminating_decimal(w)?;
        writeln!(out, "{sigma} {w}").expect("string write");
    }
    Some(out)
}
