mod cache;
mod config;
mod fixtures;
mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use knotder_core::coloring::{enumerate_homs, Source};
use knotder_core::derivations::{
    derivation_multiset, derivation_quandle, enumerate_derivations, total_derivation_quandle, Action, ActionTarget,
    BlockLabel, DerivationPolynomial, DerivationTable, MultisetMember,
};
use knotder_core::diagram::{arcs_and_relations, builtin, ArcPresentation};
use knotder_core::perm::Permutation;
use knotder_core::quandle::{are_isomorphic, write_matrix_text, FiniteQuandle};
use knotder_core::virtual_knot::{
    enumerate_virtual_homs_diagram, validate_virtual, virtual_arcs_and_relations, virtual_derivation_table,
};
use knotder_core::Error;
use serde_json::{json, Value};

use cache::DiskCache;
use config::{Config, GlobalArgs, OutputFormat};
use input::{parse_permutation, resolve_quandle, KnotArgs, UsageError};

/// Quandle colorings, derivations and derivation polynomials of knots.
#[derive(Debug, Parser)]
#[command(name = "knotder", version)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect finite quandles.
    #[command(subcommand)]
    Quandle(QuandleCmd),
    /// Count or list colorings of a knot by a quandle.
    Color(ColorArgs),
    /// Derivation invariants of a knot over an abelian quandle.
    #[command(subcommand)]
    Derive(DeriveCmd),
    /// Invariants of virtual knots over a quandle with an automorphism.
    #[command(subcommand)]
    Virtual(VirtualCmd),
    /// Regression table.
    #[command(subcommand)]
    Fixtures(FixturesCmd),
}

#[derive(Debug, Args)]
struct QuandleArg {
    /// `d<n>`, `t<n>`, `conj-aut:<quandle>`, or a `.qm` / `.json` file.
    #[arg(long)]
    quandle: String,
}

#[derive(Debug, Subcommand)]
enum QuandleCmd {
    /// Check the quandle axioms.
    Validate(QuandleArg),
    /// Structural properties.
    Props(QuandleArg),
    /// The automorphism group.
    Aut {
        #[command(flatten)]
        q: QuandleArg,
        /// Print every element in cycle notation.
        #[arg(long)]
        list: bool,
    },
    /// Decide isomorphism with another quandle.
    Iso {
        #[command(flatten)]
        q: QuandleArg,
        #[arg(long)]
        other: String,
    },
}

#[derive(Debug, Args)]
struct ColorArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[command(flatten)]
    q: QuandleArg,
    /// Print the number of colorings (default).
    #[arg(long, conflicts_with = "list")]
    count: bool,
    /// Print every coloring, one per line.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct DeriveArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[command(flatten)]
    q: QuandleArg,
}

#[derive(Debug, Subcommand)]
enum DeriveCmd {
    /// The derivation polynomial.
    Poly(DeriveArgs),
    /// The derivation quandle of one action.
    Quandle {
        #[command(flatten)]
        base: DeriveArgs,
        /// `trivial`, `const:cycles=<cycles>`, or `arcs:<cycles>;<cycles>;...`
        /// with one automorphism per arc.
        #[arg(long)]
        action: String,
    },
    /// The total derivation quandle.
    Total {
        #[command(flatten)]
        base: DeriveArgs,
        /// Write the table as a `.qm` file.
        #[arg(long)]
        matrix_out: Option<PathBuf>,
    },
    /// Derivation quandles of all actions up to isomorphism.
    Multiset(DeriveArgs),
}

#[derive(Debug, Args)]
struct VirtualArgs {
    #[command(flatten)]
    knot: KnotArgs,
    #[command(flatten)]
    q: QuandleArg,
    /// Automorphism of the target in cycle notation, or `id`.
    #[arg(long, default_value = "id")]
    beta: String,
}

#[derive(Debug, Subcommand)]
enum VirtualCmd {
    /// Colorings compatible with the virtual crossings.
    Color {
        #[command(flatten)]
        base: VirtualArgs,
        #[arg(long)]
        list: bool,
    },
    #[command(subcommand)]
    Derive(VirtualDeriveCmd),
}

#[derive(Debug, Subcommand)]
enum VirtualDeriveCmd {
    /// The virtual derivation polynomial.
    Poly(VirtualArgs),
}

#[derive(Debug, Subcommand)]
enum FixturesCmd {
    /// Run the regression table and report each row.
    Run {
        /// Table file; defaults to the built-in table.
        #[arg(long)]
        file: Option<PathBuf>,
    },
}

struct Ctx {
    cfg: Config,
    cache: DiskCache,
    /// Directory searched for fixture files named in arguments.
    fixture_dir: Option<PathBuf>,
}

impl Ctx {
    fn quandle(&self, spec: &str) -> Result<FiniteQuandle> {
        let dir = self.fixture_dir.clone();
        resolve_quandle(spec, &self.cfg, &self.cache, &move |name| fixtures::lookup(dir.as_deref(), name))
    }

    fn target(&self, spec: &str) -> Result<ActionTarget> {
        self.cache.target(self.quandle(spec)?, &self.cfg.limits)
    }

    fn table(&self, p: &ArcPresentation, at: &ActionTarget) -> Result<DerivationTable> {
        let l = &self.cfg.limits;
        let src = Source::Diagram(p);
        let homs = enumerate_homs(src, at.quandle(), l)?;
        let actions = self.cache.actions(src, at, l)?;
        Ok(DerivationTable::compute(homs, actions, |a| enumerate_derivations(src, at, a, l))?)
    }

    fn emit(&self, text: impl FnOnce() -> String, json: impl FnOnce() -> Value) {
        match self.cfg.output {
            OutputFormat::Text => print!("{}", text()),
            OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&json()).expect("JSON values serialize")),
        }
    }
}

fn one_based(rows: &[Vec<u32>]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.iter().map(|v| v + 1).collect()).collect()
}

fn lines(rows: &[Vec<u32>]) -> String {
    one_based(rows)
        .iter()
        .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ") + "\n")
        .collect()
}

/// An action in the syntax accepted by `--action`.
fn action_spec(a: &Action, at: &ActionTarget) -> String {
    let cycles: Vec<String> = a.values.iter().map(|&v| at.automorphism(v).to_string()).collect();
    if cycles.iter().all(|c| *c == cycles[0]) {
        format!("const:cycles={}", cycles[0])
    } else {
        format!("arcs:{}", cycles.join(";"))
    }
}

fn classical(knot: &KnotArgs) -> Result<ArcPresentation> {
    Ok(arcs_and_relations(&knot.diagram()?)?)
}

fn run_quandle(ctx: &Ctx, cmd: QuandleCmd) -> Result<ExitCode> {
    match cmd {
        QuandleCmd::Validate(a) => match ctx.quandle(&a.quandle) {
            Ok(q) => ctx.emit(|| format!("valid quandle of order {}\n", q.order()), || json!({"valid": true, "order": q.order()})),
            Err(e) if e.downcast_ref::<Error>().is_some() => {
                let msg = format!("{e:#}");
                ctx.emit(|| format!("invalid: {msg}\n"), || json!({"valid": false, "error": msg}));
                return Ok(ExitCode::from(2));
            }
            Err(e) => return Err(e),
        },
        QuandleCmd::Props(a) => {
            let p = ctx.quandle(&a.quandle)?.check_properties();
            ctx.emit(
                || {
                    format!(
                        "abelian={} commutative={} involutary={} flat={} trivial={} connected={}\n",
                        p.abelian, p.commutative, p.involutary, p.flat, p.trivial, p.connected
                    )
                },
                || json!(p),
            );
        }
        QuandleCmd::Aut { q, list } => {
            let g = ctx.cache.automorphism_group(&ctx.quandle(&q.quandle)?, &ctx.cfg.limits)?;
            let elements: Vec<String> = g.elements().iter().map(Permutation::to_string).collect();
            ctx.emit(
                || {
                    let mut s = format!("order {}\n", g.order());
                    if list {
                        elements.iter().for_each(|e| s.push_str(&format!("{e}\n")));
                    }
                    s
                },
                || if list { json!({"order": g.order(), "elements": elements}) } else { json!({"order": g.order()}) },
            );
        }
        QuandleCmd::Iso { q, other } => {
            let (a, b) = (ctx.quandle(&q.quandle)?, ctx.quandle(&other)?);
            let map = are_isomorphic(&a, &b).map(|m| m.iter().map(|v| v + 1).collect::<Vec<_>>());
            ctx.emit(
                || match &map {
                    Some(m) => format!(
                        "isomorphic: {}\n",
                        m.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
                    ),
                    None => "not isomorphic\n".into(),
                },
                || json!({"isomorphic": map.is_some(), "map": map}),
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_colorings(ctx: &Ctx, colorings: &[Vec<u32>], list: bool) {
    ctx.emit(
        || if list { lines(colorings) } else { format!("{}\n", colorings.len()) },
        || json!({"count": colorings.len(), "colorings": one_based(colorings)}),
    );
}

/// Parses `--action` against the arcs of `p`.
fn parse_action(spec: &str, p: &ArcPresentation, at: &ActionTarget) -> Result<Action> {
    let n = at.quandle().order();
    let perms: Vec<Permutation> = if spec == "trivial" {
        vec![Permutation::identity(n); p.arc_count]
    } else if let Some(c) = spec.strip_prefix("const:") {
        let c = c.strip_prefix("cycles=").unwrap_or(c);
        vec![parse_permutation(c, n)?; p.arc_count]
    } else if let Some(list) = spec.strip_prefix("arcs:") {
        let perms = list.split(';').map(|c| parse_permutation(c, n)).collect::<Result<Vec<_>>>()?;
        if perms.len() != p.arc_count {
            bail!(UsageError(format!("action lists {} automorphisms for {} arcs", perms.len(), p.arc_count)));
        }
        perms
    } else {
        bail!(UsageError(format!("unrecognized action {spec:?}")));
    };
    let values = perms
        .iter()
        .map(|g| {
            at.aut().index_of(g).map(|i| i as u32).ok_or_else(|| {
                anyhow::Error::new(UsageError(format!("{g} is not an automorphism of the target")))
            })
        })
        .collect::<Result<Vec<u32>>>()?;
    for (k, r) in p.relations.iter().enumerate() {
        let (o, i, v) = r.oriented();
        if at.conj().op(values[i as usize] as usize, values[v as usize] as usize) != values[o as usize] as usize {
            bail!(UsageError(format!("not an action: crossing relation {} fails", k + 1)));
        }
    }
    let id = at.identity_index();
    Ok(Action { trivial: values.iter().all(|&v| v == id), values })
}

fn run_derive(ctx: &Ctx, cmd: DeriveCmd) -> Result<ExitCode> {
    match cmd {
        DeriveCmd::Poly(a) => {
            let (p, at) = (classical(&a.knot)?, ctx.target(&a.q.quandle)?);
            let poly = ctx.table(&p, &at)?.polynomial();
            ctx.emit(|| format!("{poly}\n"), || json!(poly));
        }
        DeriveCmd::Quandle { base, action } => {
            let (p, at) = (classical(&base.knot)?, ctx.target(&base.q.quandle)?);
            let action = parse_action(&action, &p, &at)?;
            let ders = enumerate_derivations(Source::Diagram(&p), &at, &action, &ctx.cfg.limits)?;
            if ders.is_empty() {
                ctx.emit(|| "empty derivation set\n".into(), || json!({"derivations": [], "table": []}));
                return Ok(ExitCode::SUCCESS);
            }
            let q = derivation_quandle(&ders, at.quandle())?;
            ctx.emit(
                || format!("{} derivations\n{}order {}\n{q}", ders.len(), lines(&ders), q.order()),
                || json!({"derivations": one_based(&ders), "table": q.to_one_based()}),
            );
        }
        DeriveCmd::Total { base, matrix_out } => {
            let (p, at) = (classical(&base.knot)?, ctx.target(&base.q.quandle)?);
            let table = ctx.table(&p, &at)?;
            let total = total_derivation_quandle(&table, at.quandle())?;
            if let Some(path) = &matrix_out {
                std::fs::write(path, write_matrix_text(&total.quandle))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            let blocks: Vec<(String, Option<String>, usize, usize)> = total
                .blocks
                .iter()
                .map(|b| match b.label {
                    BlockLabel::Hom => ("hom".to_string(), None, b.start, b.len),
                    BlockLabel::Action(i) => {
                        (format!("action {}", i + 1), Some(action_spec(&table.actions[i], &at)), b.start, b.len)
                    }
                })
                .collect();
            ctx.emit(
                || {
                    let mut s = format!("size {}\n", total.quandle.order());
                    for (label, cyc, start, len) in &blocks {
                        s.push_str(&format!("{label}: elements {}..{}", start + 1, start + len));
                        if let Some(c) = cyc {
                            s.push_str(&format!(" {c}"));
                        }
                        s.push('\n');
                    }
                    s
                },
                || {
                    let blocks: Vec<Value> = blocks
                        .iter()
                        .map(|(label, cyc, start, len)| json!({"label": label, "action": cyc, "start": start + 1, "len": len}))
                        .collect();
                    json!({"size": total.quandle.order(), "blocks": blocks})
                },
            );
        }
        DeriveCmd::Multiset(a) => {
            let (p, at) = (classical(&a.knot)?, ctx.target(&a.q.quandle)?);
            let m = derivation_multiset(&ctx.table(&p, &at)?, at.quandle())?;
            ctx.emit(
                || m.to_string(),
                || {
                    let entries: Vec<Value> = m
                        .entries
                        .iter()
                        .map(|(member, k)| match member {
                            MultisetMember::Empty => json!({"multiplicity": k, "order": 0, "table": null}),
                            MultisetMember::Class { representative, canonical } => json!({
                                "multiplicity": k,
                                "order": representative.order(),
                                "canonical": canonical,
                                "table": representative.to_one_based(),
                            }),
                        })
                        .collect();
                    json!({"entries": entries})
                },
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_virtual(ctx: &Ctx, cmd: VirtualCmd) -> Result<ExitCode> {
    let setup = |a: &VirtualArgs| -> Result<(ArcPresentation, ActionTarget, Permutation)> {
        let p = virtual_arcs_and_relations(&a.knot.diagram()?);
        let at = ctx.target(&a.q.quandle)?;
        let beta = parse_permutation(&a.beta, at.quandle().order())?;
        Ok((p, at, beta))
    };
    match cmd {
        VirtualCmd::Color { base, list } => {
            let (p, at, beta) = setup(&base)?;
            let xb = validate_virtual(at.quandle().clone(), beta)?;
            let homs = enumerate_virtual_homs_diagram(&p, &xb, &ctx.cfg.limits)?;
            print_colorings(ctx, &homs, list);
        }
        VirtualCmd::Derive(VirtualDeriveCmd::Poly(a)) => {
            let (p, at, beta) = setup(&a)?;
            let poly = virtual_derivation_table(&p, &at, &beta, &ctx.cfg.limits)?.polynomial();
            ctx.emit(|| format!("{poly}\n"), || json!(poly));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_fixtures(ctx: &mut Ctx, file: Option<&Path>) -> Result<ExitCode> {
    let rows = match file {
        Some(f) => {
            ctx.fixture_dir = f.parent().map(Path::to_path_buf);
            fixtures::read_table(f)?
        }
        None => fixtures::parse_table(fixtures::REGRESSION_TABLE)?,
    };
    let mut results = Vec::new();
    for row in &rows {
        let p = arcs_and_relations(&builtin(&row.knot)?)?;
        let at = || ctx.target(&row.quandle);
        let (actual, pass) = match row.kind {
            fixtures::Kind::Count => {
                let n = enumerate_homs(Source::Diagram(&p), &ctx.quandle(&row.quandle)?, &ctx.cfg.limits)?.len();
                (n.to_string(), row.expected.parse::<usize>().ok() == Some(n))
            }
            fixtures::Kind::Poly => {
                let poly = ctx.table(&p, &at()?)?.polynomial();
                (poly.to_string(), row.expected.parse::<DerivationPolynomial>().ok() == Some(poly))
            }
            fixtures::Kind::Total => {
                let at = at()?;
                let n = total_derivation_quandle(&ctx.table(&p, &at)?, at.quandle())?.quandle.order();
                (n.to_string(), row.expected.parse::<usize>().ok() == Some(n))
            }
        };
        results.push((row, actual, pass));
    }
    let failed = results.iter().filter(|r| !r.2).count();
    ctx.emit(
        || {
            let mut s = String::new();
            for (row, actual, pass) in &results {
                let what = format!("{:?} {} {}", row.kind, row.knot, row.quandle).to_lowercase();
                if *pass {
                    s.push_str(&format!("PASS {what}: {actual}\n"));
                } else {
                    s.push_str(&format!("FAIL {what}: expected {}, got {actual}\n", row.expected));
                }
            }
            s.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
            s
        },
        || {
            let rows: Vec<Value> = results
                .iter()
                .map(|(row, actual, pass)| json!({"row": row, "actual": actual, "pass": pass}))
                .collect();
            json!({"rows": rows, "passed": results.len() - failed, "failed": failed})
        },
    );
    Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run(cli: Cli) -> Result<ExitCode> {
    #[cfg(feature = "parallel")]
    if let Some(n) = cli.global.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(n as usize).build_global().context("configuring worker threads")?;
    }
    let mut ctx = Ctx {
        cfg: cli.global.config(),
        cache: DiskCache::new(cli.global.cache_dir.clone()),
        fixture_dir: None,
    };
    match cli.command {
        Command::Quandle(c) => run_quandle(&ctx, c),
        Command::Color(a) => {
            let p = classical(&a.knot)?;
            let x = ctx.quandle(&a.q.quandle)?;
            let homs = enumerate_homs(Source::Diagram(&p), &x, &ctx.cfg.limits)?;
            print_colorings(&ctx, &homs, a.list);
            Ok(ExitCode::SUCCESS)
        }
        Command::Derive(c) => run_derive(&ctx, c),
        Command::Virtual(c) => run_virtual(&ctx, c),
        Command::Fixtures(FixturesCmd::Run { file }) => run_fixtures(&mut ctx, file.as_deref()),
    }
}

/// 3 for exhausted budgets, 2 for everything else.
fn exit_code(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::GroupTooLarge { .. }) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
