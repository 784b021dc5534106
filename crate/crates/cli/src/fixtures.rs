//! The regression table runner.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use crate::input::UsageError;

pub const REGRESSION_TABLE: &str = include_str!("../../../fixtures/regression.txt");

const EMBEDDED: [(&str, &str); 4] = [
    ("abelian4.qm", include_str!("../../../fixtures/abelian4.qm")),
    ("rigid3.qm", include_str!("../../../fixtures/rigid3.qm")),
    ("x11.qm", include_str!("../../../fixtures/x11.qm")),
    ("x15.qm", include_str!("../../../fixtures/x15.qm")),
];

/// Fixture file contents by name: next to `base` first, then the embedded copies.
pub fn lookup(base: Option<&Path>, name: &str) -> Option<String> {
    if let Some(dir) = base {
        if let Ok(text) = std::fs::read_to_string(dir.join(name)) {
            return Some(text);
        }
    }
    let file = Path::new(name).file_name()?.to_str()?;
    EMBEDDED.iter().find(|(n, _)| *n == file).map(|(_, t)| t.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Count,
    Poly,
    Total,
}

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub line: usize,
    pub kind: Kind,
    pub knot: String,
    pub quandle: String,
    pub expected: String,
}

pub fn parse_table(text: &str) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cells: Vec<&str> = line.split('|').map(str::trim).collect();
        let [kind, knot, quandle, expected] = cells[..] else {
            bail!(UsageError(format!("fixture line {}: expected 4 fields separated by '|'", i + 1)));
        };
        let kind = match kind {
            "count" => Kind::Count,
            "poly" => Kind::Poly,
            "total" => Kind::Total,
            other => bail!(UsageError(format!("fixture line {}: unknown kind {other:?}", i + 1))),
        };
        rows.push(Row {
            line: i + 1,
            kind,
            knot: knot.to_string(),
            quandle: quandle.to_string(),
            expected: expected.to_string(),
        });
    }
    Ok(rows)
}

pub fn read_table(path: &Path) -> Result<Vec<Row>> {
    parse_table(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)
}
