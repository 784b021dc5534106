//! The `.qm` matrix text format and its JSON mirror.
//!
//! Text format: the first line holds `n`, followed by `n` lines of `n`
//! space-separated 1-based entries. Lines starting with `#` are ignored.

use serde::{Deserialize, Serialize};

use super::{validate_table, FiniteQuandle};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleJson {
    pub n: usize,
    pub table: Vec<Vec<i64>>,
}

pub fn parse_matrix_text(text: &str) -> Result<FiniteQuandle> {
    let mut lines = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| Error::Invalid("empty quandle file".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| Error::Invalid(format!("expected the order on the first line, found {header:?}")))?;
    let mut rows = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        if i >= n {
            return Err(Error::Invalid(format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>().map_err(|_| Error::Invalid(format!("row {}: bad entry {t:?}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    if rows.len() != n {
        return Err(Error::Invalid(format!("expected {n} rows, found {}", rows.len())));
    }
    Ok(validate_table(&rows)?)
}

pub fn write_matrix_text(q: &FiniteQuandle) -> String {
    let mut s = format!("{}\n", q.order());
    s.push_str(&q.to_string());
    s
}

pub fn quandle_to_json(q: &FiniteQuandle) -> QuandleJson {
    QuandleJson {
        n: q.order(),
        table: q.to_one_based().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect(),
    }
}

pub fn quandle_from_json(json: &QuandleJson) -> Result<FiniteQuandle> {
    if json.table.len() != json.n {
        return Err(Error::Invalid(format!("n = {} but table has {} rows", json.n, json.table.len())));
    }
    Ok(validate_table(&json.table)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{dihedral, QuandleError};

    #[test]
    fn text_round_trip() {
        let q = dihedral(7);
        let text = write_matrix_text(&q);
        assert_eq!(parse_matrix_text(&text).unwrap(), q);
    }

    #[test]
    fn json_round_trip() {
        let q = dihedral(4);
        let json = serde_json::to_string(&quandle_to_json(&q)).unwrap();
        let back: QuandleJson = serde_json::from_str(&json).unwrap();
        assert_eq!(quandle_from_json(&back).unwrap(), q);
    }

    #[test]
    fn rejects_with_axiom() {
        let err = parse_matrix_text("2\n2 1\n1 2\n").unwrap_err();
        assert!(matches!(err, Error::Quandle(QuandleError::Q1Violation { i: 1 })));
        assert!(parse_matrix_text("3\n1 2 3\n").is_err());
        assert!(parse_matrix_text("x\n").is_err());
    }
}
