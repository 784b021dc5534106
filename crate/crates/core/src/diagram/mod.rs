//! Knot diagrams: PD and Gauss code parsing, arc presentations and
//! Reidemeister insertions.
//!
//! A diagram is stored as the cyclic sequence of crossing visits along each
//! component. Edge labels are derived from that sequence: in a component whose
//! first label is `b`, edge `b + i` is the edge entering the `i`-th visit. PD
//! tuples `(a, b, c, d)` list the edges counterclockwise starting at the
//! incoming under-edge `a`; a classical crossing is positive when the over
//! strand runs `d → b` (`b ≡ d + 1`) and negative when it runs `b → d`.
//!
//! Virtual crossings `V(a, b, c, d)` use the same layout with strand `a → c`
//! in place of the under strand.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod arcs;
mod moves;

pub use arcs::{arcs_and_relations, ArcPresentation, ArcRelation, TwistRelation};
pub(crate) use arcs::presentation;
pub use moves::{r1_add, r2_add, vr2_add};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Classical(Sign),
    /// `a_from_left`: the `a → c` strand crosses the other strand from that
    /// strand's left to its right (equivalently, the other strand runs `b → d`).
    Virtual { a_from_left: bool },
}

/// A crossing with its PD tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub tuple: [u32; 4],
    pub kind: CrossingKind,
}

impl Crossing {
    pub fn is_virtual(&self) -> bool {
        matches!(self.kind, CrossingKind::Virtual { .. })
    }

    pub fn sign(&self) -> Option<Sign> {
        match self.kind {
            CrossingKind::Classical(s) => Some(s),
            CrossingKind::Virtual { .. } => None,
        }
    }

    pub fn under_in(&self) -> u32 {
        self.tuple[0]
    }

    pub fn under_out(&self) -> u32 {
        self.tuple[2]
    }

    /// Incoming edge of the second strand (over strand for classical).
    pub fn over_in(&self) -> u32 {
        if self.second_runs_d_to_b() {
            self.tuple[3]
        } else {
            self.tuple[1]
        }
    }

    pub fn over_out(&self) -> u32 {
        if self.second_runs_d_to_b() {
            self.tuple[1]
        } else {
            self.tuple[3]
        }
    }

    fn second_runs_d_to_b(&self) -> bool {
        match self.kind {
            CrossingKind::Classical(s) => s == Sign::Positive,
            CrossingKind::Virtual { a_from_left } => !a_from_left,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Role {
    /// Under strand of a classical crossing; `a → c` strand of a virtual one.
    Under,
    Over,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct Visit {
    pub crossing: u32,
    pub role: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty diagram (pass the unknot flag for a crossingless unknot)")]
    Empty,
    #[error("malformed token {0:?}")]
    Malformed(String),
    #[error("virtual crossing {0:?} in a classical diagram")]
    VirtualNotAllowed(String),
    #[error("edge label {label} appears {count} times, expected exactly twice")]
    LabelCount { label: u32, count: usize },
    #[error("edge labels must be 1..={expected}; found {label}")]
    LabelRange { label: u32, expected: u32 },
    #[error("component labels {lo}..={hi} are not consecutive")]
    ComponentRange { lo: u32, hi: u32 },
    #[error("crossing {crossing}: outgoing edge does not follow the incoming edge")]
    NotSuccessor { crossing: usize },
    #[error("crossing {crossing}: second strand orientation is ambiguous; supply an assumed sign")]
    AmbiguousSign { crossing: usize },
    #[error("Gauss code: crossing {id} must be visited once over and once under")]
    GaussVisits { id: u32 },
    #[error("Gauss code: crossing {id} has different signs at its two visits")]
    GaussSign { id: u32 },
    #[error("unknown built-in knot {0:?}")]
    UnknownKnot(String),
    #[error("invalid JSON diagram: {0}")]
    Json(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Empty input denotes the crossingless unknot.
    pub unknot_if_empty: bool,
    /// Sign used when a crossing's over strand could run either way (a
    /// component with only two edges).
    pub assume_sign: Option<Sign>,
}

/// A knot (or link) diagram, possibly with virtual crossings.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    kinds: Vec<CrossingKind>,
    components: Vec<Vec<Visit>>,
    crossings: Vec<Crossing>,
}

impl KnotDiagram {
    pub(crate) fn from_parts(kinds: Vec<CrossingKind>, components: Vec<Vec<Visit>>) -> Self {
        let mut d = KnotDiagram { kinds, components, crossings: Vec::new() };
        d.rebuild_tuples();
        d
    }

    /// The crossingless unknot; its single edge is labelled 1.
    pub fn unknot() -> Self {
        Self::from_parts(Vec::new(), vec![Vec::new()])
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn classical_crossing_count(&self) -> usize {
        self.crossings.iter().filter(|c| !c.is_virtual()).count()
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn is_classical(&self) -> bool {
        self.crossings.iter().all(|c| !c.is_virtual())
    }

    /// Number of edge labels (a crossingless component has one edge).
    pub fn edge_count(&self) -> u32 {
        self.components.iter().map(|c| c.len().max(1) as u32).sum()
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().filter_map(|c| c.sign()).map(|s| s.as_i8() as i64).sum()
    }

    pub(crate) fn components(&self) -> &[Vec<Visit>] {
        &self.components
    }

    pub(crate) fn kinds(&self) -> &[CrossingKind] {
        &self.kinds
    }

    /// First edge label of each component.
    pub(crate) fn component_bases(&self) -> Vec<u32> {
        let mut base = 1;
        self.components
            .iter()
            .map(|c| {
                let b = base;
                base += c.len().max(1) as u32;
                b
            })
            .collect()
    }

    /// Locates edge `label`: (component, position of the visit it enters).
    pub(crate) fn locate_edge(&self, label: u32) -> Option<(usize, usize)> {
        let bases = self.component_bases();
        for (k, comp) in self.components.iter().enumerate() {
            let len = comp.len().max(1) as u32;
            if label >= bases[k] && label < bases[k] + len {
                return Some((k, (label - bases[k]) as usize));
            }
        }
        None
    }

    fn rebuild_tuples(&mut self) {
        let bases = self.component_bases();
        let m = self.kinds.len();
        // (in, out) edge per crossing for each role
        let mut under = vec![(0u32, 0u32); m];
        let mut over = vec![(0u32, 0u32); m];
        for (k, comp) in self.components.iter().enumerate() {
            let len = comp.len();
            for (i, v) in comp.iter().enumerate() {
                let e_in = bases[k] + i as u32;
                let e_out = bases[k] + ((i + 1) % len) as u32;
                match v.role {
                    Role::Under => under[v.crossing as usize] = (e_in, e_out),
                    Role::Over => over[v.crossing as usize] = (e_in, e_out),
                }
            }
        }
        self.crossings = self
            .kinds
            .iter()
            .enumerate()
            .map(|(c, &kind)| {
                let (a, cc) = under[c];
                let (oi, oo) = over[c];
                let d_to_b = match kind {
                    CrossingKind::Classical(s) => s == Sign::Positive,
                    CrossingKind::Virtual { a_from_left } => !a_from_left,
                };
                let tuple = if d_to_b { [a, oo, cc, oi] } else { [a, oi, cc, oo] };
                Crossing { tuple, kind }
            })
            .collect();
    }

    /// PD text, e.g. `X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)`; virtual crossings
    /// print as `V(...)`.
    pub fn to_pd_string(&self) -> String {
        self.crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.tuple;
                let tag = if c.is_virtual() { 'V' } else { 'X' };
                format!("{tag}({a},{b},{cc},{d})")
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Signed Gauss code of a classical knot, crossings numbered from 1 in
    /// storage order.
    pub fn to_gauss_string(&self) -> Option<String> {
        if self.components.len() != 1 || !self.is_classical() {
            return None;
        }
        let parts: Vec<String> = self.components[0]
            .iter()
            .map(|v| {
                let s = self.crossings[v.crossing as usize].sign().unwrap().symbol();
                let r = if v.role == Role::Over { 'O' } else { 'U' };
                format!("{r}{}{s}", v.crossing + 1)
            })
            .collect();
        Some(parts.join(" "))
    }

    pub fn to_json(&self) -> DiagramJson {
        let (virt, class): (Vec<&Crossing>, Vec<&Crossing>) = self.crossings.iter().partition(|c| c.is_virtual());
        DiagramJson {
            crossings: class.iter().map(|c| c.tuple).collect(),
            virtual_crossings: virt.iter().map(|c| c.tuple).collect(),
        }
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.crossings.is_empty() {
            write!(f, "(unknot: {} crossingless component(s))", self.components.len())
        } else {
            write!(f, "{}", self.to_pd_string())
        }
    }
}

/// JSON form of a diagram.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramJson {
    pub crossings: Vec<[u32; 4]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub virtual_crossings: Vec<[u32; 4]>,
}

#[derive(Debug, Clone, Copy)]
struct RawCrossing {
    tuple: [u32; 4],
    is_virtual: bool,
}

fn tokenize(text: &str, allow_virtual: bool) -> Result<Vec<RawCrossing>, ParseError> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = compact.as_str();
    while !rest.is_empty() {
        let tag = rest.chars().next().unwrap();
        let end = rest.find(')').map(|e| e + 1).unwrap_or(rest.len());
        let token = &rest[..end];
        rest = rest[end..].trim_start_matches(',');
        let is_virtual = match tag {
            'X' => false,
            'V' if allow_virtual => true,
            'V' => return Err(ParseError::VirtualNotAllowed(token.to_string())),
            _ => return Err(ParseError::Malformed(token.to_string())),
        };
        let body = token[1..]
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| ParseError::Malformed(token.to_string()))?;
        let nums = body
            .split(',')
            .map(|t| t.parse::<u32>().map_err(|_| ParseError::Malformed(token.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        let tuple: [u32; 4] = nums.try_into().map_err(|_| ParseError::Malformed(token.to_string()))?;
        out.push(RawCrossing { tuple, is_virtual });
    }
    Ok(out)
}

fn build_from_tuples(raw: &[RawCrossing], opts: ParseOptions) -> Result<KnotDiagram, ParseError> {
    if raw.is_empty() {
        return if opts.unknot_if_empty { Ok(KnotDiagram::unknot()) } else { Err(ParseError::Empty) };
    }
    let m = 2 * raw.len() as u32;
    let mut count: BTreeMap<u32, usize> = BTreeMap::new();
    for r in raw {
        for &l in &r.tuple {
            *count.entry(l).or_default() += 1;
        }
    }
    for (&label, &c) in &count {
        if label == 0 || label > m {
            return Err(ParseError::LabelRange { label, expected: m });
        }
        if c != 2 {
            return Err(ParseError::LabelCount { label, count: c });
        }
    }
    // Components: labels joined through each crossing's two strands.
    let mut parent: Vec<u32> = (0..=m).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    for r in raw {
        for (x, y) in [(r.tuple[0], r.tuple[2]), (r.tuple[1], r.tuple[3])] {
            let (a, b) = (find(&mut parent, x), find(&mut parent, y));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut ranges: BTreeMap<u32, (u32, u32, u32)> = BTreeMap::new(); // root -> (lo, hi, size)
    for l in 1..=m {
        let r = find(&mut parent, l);
        let e = ranges.entry(r).or_insert((l, l, 0));
        e.0 = e.0.min(l);
        e.1 = e.1.max(l);
        e.2 += 1;
    }
    let mut comp_of = vec![(0u32, 0u32); m as usize + 1];
    for &(lo, hi, size) in ranges.values() {
        if hi - lo + 1 != size {
            return Err(ParseError::ComponentRange { lo, hi });
        }
        for l in lo..=hi {
            comp_of[l as usize] = (lo, hi);
        }
    }
    let succ = |l: u32| {
        let (lo, hi) = comp_of[l as usize];
        if l == hi {
            lo
        } else {
            l + 1
        }
    };
    // Orientation of each crossing's second strand: Some(true) when it runs
    // d -> b. The successor test decides all but two-edge components.
    let mut dirs: Vec<Option<bool>> = Vec::with_capacity(raw.len());
    for (i, r) in raw.iter().enumerate() {
        let [a, b, c, d] = r.tuple;
        if succ(a) != c {
            return Err(ParseError::NotSuccessor { crossing: i + 1 });
        }
        dirs.push(match (succ(d) == b, succ(b) == d) {
            (true, false) => Some(true),
            (false, true) => Some(false),
            (true, true) => None,
            (false, false) => return Err(ParseError::NotSuccessor { crossing: i + 1 }),
        });
    }
    resolve_by_occurrence(raw, &mut dirs);
    let mut kinds = Vec::with_capacity(raw.len());
    // incoming label -> visit
    let mut entering: Vec<Option<Visit>> = vec![None; m as usize + 1];
    for (i, r) in raw.iter().enumerate() {
        let [a, b, _, d] = r.tuple;
        let d_to_b = match (dirs[i], opts.assume_sign) {
            (Some(x), _) => x,
            (None, Some(s)) => s == Sign::Positive,
            (None, None) => return Err(ParseError::AmbiguousSign { crossing: i + 1 }),
        };
        kinds.push(if r.is_virtual {
            CrossingKind::Virtual { a_from_left: !d_to_b }
        } else {
            CrossingKind::Classical(if d_to_b { Sign::Positive } else { Sign::Negative })
        });
        let over_in = if d_to_b { d } else { b };
        entering[a as usize] = Some(Visit { crossing: i as u32, role: Role::Under });
        entering[over_in as usize] = Some(Visit { crossing: i as u32, role: Role::Over });
    }
    let mut components: Vec<(u32, u32)> = ranges.values().map(|&(lo, hi, _)| (lo, hi)).collect();
    components.sort_unstable();
    let components = components
        .into_iter()
        .map(|(lo, hi)| (lo..=hi).map(|l| entering[l as usize].expect("every edge enters a crossing")).collect())
        .collect();
    Ok(KnotDiagram::from_parts(kinds, components))
}

/// Orients undecided second strands from the other occurrence of their
/// labels: every edge enters one crossing and leaves another.
fn resolve_by_occurrence(raw: &[RawCrossing], dirs: &mut [Option<bool>]) {
    // (crossing, position) of both occurrences of each label
    let mut occ: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, r) in raw.iter().enumerate() {
        for (p, &l) in r.tuple.iter().enumerate() {
            occ.entry(l).or_default().push((i, p));
        }
    }
    // Whether the occurrence (i, p) is an incoming edge, if known.
    let incoming = |dirs: &[Option<bool>], i: usize, p: usize| -> Option<bool> {
        match p {
            0 => Some(true),
            2 => Some(false),
            1 => dirs[i].map(|d_to_b| !d_to_b),
            _ => dirs[i],
        }
    };
    loop {
        let mut changed = false;
        for i in 0..raw.len() {
            if dirs[i].is_some() {
                continue;
            }
            for p in [1usize, 3] {
                let label = raw[i].tuple[p];
                let other = occ[&label].iter().copied().find(|&o| o != (i, p));
                if let Some((j, q)) = other {
                    if let Some(other_in) = incoming(dirs, j, q) {
                        // this occurrence is incoming iff the other is not
                        let here_in = !other_in;
                        // d -> b means d is incoming
                        dirs[i] = Some(if p == 3 { here_in } else { !here_in });
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Parses whitespace-separated `X(a,b,c,d)` tokens.
pub fn parse_pd(text: &str, opts: ParseOptions) -> Result<KnotDiagram, ParseError> {
    build_from_tuples(&tokenize(text, false)?, opts)
}

/// Parses `X(...)` and `V(...)` tokens.
pub fn parse_virtual(text: &str, opts: ParseOptions) -> Result<KnotDiagram, ParseError> {
    build_from_tuples(&tokenize(text, true)?, opts)
}

pub fn parse_json(json: &str, opts: ParseOptions) -> Result<KnotDiagram, ParseError> {
    let d: DiagramJson = serde_json::from_str(json).map_err(|e| ParseError::Json(e.to_string()))?;
    from_json(&d, opts)
}

pub fn from_json(d: &DiagramJson, opts: ParseOptions) -> Result<KnotDiagram, ParseError> {
    let raw: Vec<RawCrossing> = d
        .crossings
        .iter()
        .map(|&tuple| RawCrossing { tuple, is_virtual: false })
        .chain(d.virtual_crossings.iter().map(|&tuple| RawCrossing { tuple, is_virtual: true }))
        .collect();
    build_from_tuples(&raw, opts)
}

/// Parses a signed Gauss code such as `O1- U2- O3- U1- O2- U3-` (one
/// component). Crossings are stored in order of first appearance.
pub fn parse_gauss(text: &str) -> Result<KnotDiagram, ParseError> {
    let mut ids: Vec<u32> = Vec::new();
    let mut seen: BTreeMap<u32, (usize, Option<Sign>, u8, u8)> = BTreeMap::new(); // id -> (index, sign, overs, unders)
    let mut visits = Vec::new();
    for token in text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
        let malformed = || ParseError::Malformed(token.to_string());
        let mut chars = token.chars();
        let role = match chars.next() {
            Some('O') | Some('o') => Role::Over,
            Some('U') | Some('u') => Role::Under,
            _ => return Err(malformed()),
        };
        let rest = chars.as_str();
        let (num, sign) = match rest.chars().last() {
            Some('+') => (&rest[..rest.len() - 1], Sign::Positive),
            Some('-') => (&rest[..rest.len() - 1], Sign::Negative),
            _ => return Err(malformed()),
        };
        let id: u32 = num.parse().map_err(|_| malformed())?;
        let next = ids.len();
        let entry = seen.entry(id).or_insert_with(|| (next, None, 0, 0));
        if entry.0 == next {
            ids.push(id);
        }
        match entry.1 {
            Some(s) if s != sign => return Err(ParseError::GaussSign { id }),
            _ => entry.1 = Some(sign),
        }
        match role {
            Role::Over => entry.2 += 1,
            Role::Under => entry.3 += 1,
        }
        visits.push(Visit { crossing: entry.0 as u32, role });
    }
    if visits.is_empty() {
        return Err(ParseError::Empty);
    }
    let mut kinds = vec![CrossingKind::Classical(Sign::Positive); ids.len()];
    for (&id, &(idx, sign, overs, unders)) in &seen {
        if overs != 1 || unders != 1 {
            return Err(ParseError::GaussVisits { id });
        }
        kinds[idx] = CrossingKind::Classical(sign.unwrap());
    }
    Ok(KnotDiagram::from_parts(kinds, vec![visits]))
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 5] = ["unknot", "3_1", "4_1", "5_1", "5_2"];

/// Stored PD codes of small knots.
pub fn builtin_pd(name: &str) -> Option<&'static str> {
    Some(match name {
        "unknot" | "0_1" => "",
        "3_1" => "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)",
        "4_1" => "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)",
        "5_1" => "X(1,6,2,7) X(3,8,4,9) X(5,10,6,1) X(7,2,8,3) X(9,4,10,5)",
        "5_2" => "X(1,4,2,5) X(3,8,4,9) X(5,10,6,1) X(9,6,10,7) X(7,2,8,3)",
        _ => return None,
    })
}

pub fn builtin(name: &str) -> Result<KnotDiagram, ParseError> {
    let pd = builtin_pd(name).ok_or_else(|| ParseError::UnknownKnot(name.to_string()))?;
    parse_pd(pd, ParseOptions { unknot_if_empty: true, assume_sign: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_pd() {
        let d = builtin("3_1").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.edge_count(), 6);
        assert!(d.crossings().iter().all(|c| c.sign() == Some(Sign::Negative)));
        assert_eq!(d.to_pd_string(), builtin_pd("3_1").unwrap());
    }

    #[test]
    fn figure_eight_signs() {
        let d = builtin("4_1").unwrap();
        let mut signs: Vec<i8> = d.crossings().iter().map(|c| c.sign().unwrap().as_i8()).collect();
        signs.sort();
        assert_eq!(signs, vec![-1, -1, 1, 1]);
        assert_eq!(d.writhe(), 0);
    }

    #[test]
    fn unknot_requires_flag() {
        assert_eq!(parse_pd("", ParseOptions::default()).unwrap_err(), ParseError::Empty);
        let u = parse_pd("", ParseOptions { unknot_if_empty: true, ..Default::default() }).unwrap();
        assert_eq!(u.crossing_count(), 0);
        assert_eq!(u.edge_count(), 1);
    }

    #[test]
    fn malformed_tokens() {
        assert!(matches!(parse_pd("X(1,2,3)", ParseOptions::default()), Err(ParseError::Malformed(_))));
        assert!(matches!(parse_pd("Y(1,2,3,4)", ParseOptions::default()), Err(ParseError::Malformed(_))));
        assert!(matches!(
            parse_pd("X(1,4,2,5) X(3,6,4,1) V(5,2,6,3)", ParseOptions::default()),
            Err(ParseError::VirtualNotAllowed(_))
        ));
        assert!(matches!(
            parse_pd("X(1,4,2,5) X(3,6,4,1) X(5,2,6,5)", ParseOptions::default()),
            Err(ParseError::LabelCount { .. })
        ));
    }

    #[test]
    fn gauss_codes() {
        let d = parse_gauss("O1- U2- O3- U1- O2- U3-").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.to_gauss_string().unwrap(), "O1- U2- O3- U1- O2- U3-");
        let kink = parse_gauss("O1+ U1+").unwrap();
        assert_eq!(kink.crossing_count(), 1);
        assert_eq!(parse_gauss("O1+ U2-").unwrap_err(), ParseError::GaussVisits { id: 1 });
        assert_eq!(parse_gauss("O1+ U1-").unwrap_err(), ParseError::GaussSign { id: 1 });
        assert!(parse_gauss("Q1+").is_err());
    }

    #[test]
    fn one_crossing_kinks_round_trip() {
        for code in ["O1+ U1+", "O1- U1-", "U1+ O1+"] {
            let kink = parse_gauss(code).unwrap();
            assert_eq!(parse_pd(&kink.to_pd_string(), ParseOptions::default()).unwrap(), kink, "{code}");
        }
    }

    #[test]
    fn free_over_component_needs_assumed_sign() {
        // component {1,2} only passes over, so its direction is a free choice
        let pd = "X(3,1,4,2) X(4,2,3,1)";
        assert!(matches!(parse_pd(pd, ParseOptions::default()), Err(ParseError::AmbiguousSign { .. })));
        let opts = ParseOptions { assume_sign: Some(Sign::Positive), ..Default::default() };
        let d = parse_pd(pd, opts).unwrap();
        assert_eq!(d.crossings()[0].sign(), Some(Sign::Positive));
    }

    #[test]
    fn json_round_trip() {
        let d = builtin("5_2").unwrap();
        let json = serde_json::to_string(&d.to_json()).unwrap();
        assert!(json.starts_with("{\"crossings\":[[1,4,2,5]"));
        assert_eq!(parse_json(&json, ParseOptions::default()).unwrap(), d);
    }

    #[test]
    fn two_component_link_parses() {
        // Hopf link
        let d = parse_pd("X(4,1,3,2) X(2,3,1,4)", ParseOptions::default()).unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.crossing_count(), 2);
    }
}
