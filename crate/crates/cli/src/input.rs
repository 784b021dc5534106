//! Resolving knot and quandle arguments.

use std::path::Path;

use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use knotder_core::autgroup::conj_quandle;
use knotder_core::diagram::{builtin, parse_gauss, parse_json, parse_pd, parse_virtual, KnotDiagram, ParseOptions, Sign};
use knotder_core::perm::Permutation;
use knotder_core::quandle::{dihedral, parse_matrix_text, quandle_from_json, trivial, FiniteQuandle, QuandleJson};

use crate::cache::DiskCache;
use crate::config::Config;

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SignArg {
    #[value(name = "+", alias = "positive")]
    Positive,
    #[value(name = "-", alias = "negative")]
    Negative,
}

/// One of the diagram sources.
#[derive(Debug, Args)]
#[group(required = true, multiple = false, id = "diagram")]
pub struct KnotSource {
    /// Built-in knot: unknot, 3_1, 4_1, 5_1, 5_2.
    #[arg(long)]
    pub knot: Option<String>,
    /// PD code `X(a,b,c,d) ...`, inline or a file path.
    #[arg(long)]
    pub pd: Option<String>,
    /// Signed Gauss code `O1- U2- ...`, inline or a file path.
    #[arg(long)]
    pub gauss: Option<String>,
    /// JSON diagram `{"crossings": [[a,b,c,d], ...]}`, inline or a file path.
    #[arg(long)]
    pub json: Option<String>,
    /// PD code with virtual crossings `V(a,b,c,d)`, inline or a file path.
    #[arg(long)]
    pub vpd: Option<String>,
    /// The crossingless unknot.
    #[arg(long)]
    pub unknot: bool,
}

#[derive(Debug, Args)]
pub struct KnotArgs {
    #[command(flatten)]
    pub source: KnotSource,
    /// Sign for crossings whose over strand direction is ambiguous.
    #[arg(long, value_enum)]
    pub assume_sign: Option<SignArg>,
    /// Accept diagrams with more than one component.
    #[arg(long)]
    pub allow_links: bool,
}

/// Inline text, or the contents of the file it names.
fn text_or_file(s: &str) -> Result<String> {
    let path = Path::new(s);
    if path.is_file() {
        return std::fs::read_to_string(path).with_context(|| format!("reading {s}"));
    }
    Ok(s.to_string())
}

impl KnotArgs {
    pub fn diagram(&self) -> Result<KnotDiagram> {
        let opts = ParseOptions {
            unknot_if_empty: false,
            assume_sign: self.assume_sign.map(|s| match s {
                SignArg::Positive => Sign::Positive,
                SignArg::Negative => Sign::Negative,
            }),
        };
        let s = &self.source;
        let d = if let Some(name) = &s.knot {
            builtin(name)?
        } else if let Some(pd) = &s.pd {
            parse_pd(&text_or_file(pd)?, opts)?
        } else if let Some(g) = &s.gauss {
            parse_gauss(&text_or_file(g)?)?
        } else if let Some(j) = &s.json {
            parse_json(&text_or_file(j)?, opts)?
        } else if let Some(v) = &s.vpd {
            parse_virtual(&text_or_file(v)?, opts)?
        } else {
            KnotDiagram::unknot()
        };
        if d.component_count() > 1 && !self.allow_links {
            bail!(UsageError(format!("diagram has {} components; pass --allow-links", d.component_count())));
        }
        Ok(d)
    }
}

/// An input problem that is not a library error.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Looks up a fixture file by name: `base` first, then the embedded copies.
pub type FixtureLookup<'a> = &'a dyn Fn(&str) -> Option<String>;

/// `d<n>`, `t<n>`, `conj-aut:<spec>`, or a `.qm` / `.json` path.
pub fn resolve_quandle(spec: &str, cfg: &Config, cache: &DiskCache, fixtures: FixtureLookup<'_>) -> Result<FiniteQuandle> {
    if let Some(inner) = spec.strip_prefix("conj-aut:") {
        let x = resolve_quandle(inner, cfg, cache, fixtures)?;
        return Ok(conj_quandle(&cache.automorphism_group(&x, &cfg.limits)?));
    }
    let order = |rest: &str| -> Option<usize> { rest.parse().ok().filter(|&n| n >= 1) };
    if let Some(n) = spec.strip_prefix('d').and_then(order) {
        if n < 3 {
            bail!(UsageError(format!("dihedral quandle needs n >= 3, got {n}")));
        }
        return Ok(dihedral(n));
    }
    if let Some(n) = spec.strip_prefix('t').and_then(order) {
        return Ok(trivial(n));
    }
    let text = if Path::new(spec).is_file() {
        std::fs::read_to_string(spec).with_context(|| format!("reading {spec}"))?
    } else if let Some(t) = fixtures(spec) {
        t
    } else {
        bail!(UsageError(format!("unknown quandle {spec:?}: not an alias or a readable file")));
    };
    if spec.ends_with(".json") {
        let j: QuandleJson = serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
        Ok(quandle_from_json(&j)?)
    } else {
        Ok(parse_matrix_text(&text)?)
    }
}

pub fn parse_permutation(text: &str, n: usize) -> Result<Permutation> {
    let t = text.trim();
    if t == "id" {
        return Ok(Permutation::identity(n));
    }
    Ok(Permutation::from_cycles(t, n)?)
}
