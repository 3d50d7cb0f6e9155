//! Line-oriented constellation files.
//!
//! ```text
//! # comment
//! A1 O
//! A3 A1 O
//! ```
//!
//! Each line is `<astre> <p_D>` or `<astre> <p_D> <p_I>`; `O` is implicit
//! and lines may come in any order.

use std::fmt::Write;

use lotus_core::{AstreId, AstreRecord, Constellation, ConstellationError, Violation};

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected 2 or 3 fields, found {found}")]
    Malformed { line: usize, found: usize },
    #[error("line {line}: {source}")]
    Name { line: usize, source: ConstellationError },
    #[error(transparent)]
    Structure(#[from] ConstellationError),
    #[error("invalid constellation: {}", list(.0))]
    Invalid(Vec<Violation>),
}

fn list(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// Parses and validates.
pub fn parse(src: &str) -> Result<Constellation, ParseError> {
    let c = parse_unchecked(src)?;
    let violations = c.validate();
    if violations.is_empty() {
        Ok(c)
    } else {
        Err(ParseError::Invalid(violations))
    }
}

/// Parses without checking the geometric rules; structural errors
/// (duplicates, unknown references, cycles) are still reported.
pub fn parse_unchecked(src: &str) -> Result<Constellation, ParseError> {
    let mut records = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        if !(2..=3).contains(&fields.len()) {
            return Err(ParseError::Malformed { line, found: fields.len() });
        }
        let name = |s: &str| AstreId::new(s).map_err(|source| ParseError::Name { line, source });
        records.push(AstreRecord {
            id: name(fields[0])?,
            direct: name(fields[1])?,
            indirect: fields.get(2).map(|s| name(s)).transpose()?,
        });
    }
    Ok(Constellation::from_records(records)?)
}

/// One line per astre besides `O`, sorted by height then name.
pub fn serialize(c: &Constellation) -> String {
    let mut out = String::new();
    for r in c.non_base() {
        match &r.indirect {
            Some(i) => writeln!(out, "{} {} {}", r.id, r.direct, i),
            None => writeln!(out, "{} {}", r.id, r.direct),
        }
        .expect("writing to a String");
    }
    out
}
