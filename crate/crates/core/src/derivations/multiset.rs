use std::fmt;

use super::DerivationTable;
use crate::coloring::pointwise_quandle;
use crate::quandle::{are_isomorphic, canonical_table, fingerprint, FiniteQuandle, Fingerprint};
use crate::{Error, Result};

/// One isomorphism class in a derivation multiset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MultisetMember {
    /// An action with no derivations.
    Empty,
    /// A derivation quandle class. The representative is the canonical
    /// (lexicographically least) table for small orders and the first
    /// quandle met otherwise.
    Class { representative: FiniteQuandle, canonical: bool },
}

impl MultisetMember {
    pub fn order(&self) -> usize {
        match self {
            MultisetMember::Empty => 0,
            MultisetMember::Class { representative, .. } => representative.order(),
        }
    }

    fn matches(&self, other: &MultisetMember) -> bool {
        match (self, other) {
            (MultisetMember::Empty, MultisetMember::Empty) => true,
            (MultisetMember::Class { representative: a, .. }, MultisetMember::Class { representative: b, .. }) => {
                are_isomorphic(a, b).is_some()
            }
            _ => false,
        }
    }
}

/// Derivation quandles of every action (the trivial one included), bucketed
/// by isomorphism class.
#[derive(Debug, Clone)]
pub struct DerivationMultiset {
    /// Classes with multiplicities, sorted by order, then by the first action
    /// that produced them.
    pub entries: Vec<(MultisetMember, usize)>,
}

impl DerivationMultiset {
    pub fn total(&self) -> usize {
        self.entries.iter().map(|(_, m)| m).sum()
    }

    /// Multiset equality up to isomorphism of the members.
    pub fn equivalent(&self, other: &DerivationMultiset) -> bool {
        if self.entries.len() != other.entries.len() || self.total() != other.total() {
            return false;
        }
        let mut used = vec![false; other.entries.len()];
        self.entries.iter().all(|(m, k)| {
            let hit = other
                .entries
                .iter()
                .enumerate()
                .position(|(j, (o, l))| !used[j] && l == k && o.order() == m.order() && m.matches(o));
            match hit {
                Some(j) => {
                    used[j] = true;
                    true
                }
                None => false,
            }
        })
    }
}

impl fmt::Display for DerivationMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (m, k) in &self.entries {
            match m {
                MultisetMember::Empty => writeln!(f, "{k} x empty")?,
                MultisetMember::Class { representative, .. } => {
                    writeln!(f, "{k} x order {}", representative.order())?;
                    write!(f, "{representative}")?;
                }
            }
        }
        Ok(())
    }
}

/// Buckets the derivation quandle of every action by isomorphism class.
pub fn derivation_multiset(table: &DerivationTable, x: &FiniteQuandle) -> Result<DerivationMultiset> {
    if !x.is_abelian() {
        return Err(Error::NotAbelianTarget);
    }
    // (member, fingerprint, multiplicity)
    let mut buckets: Vec<(MultisetMember, Option<Fingerprint>, usize)> = Vec::new();
    for ders in &table.derivations {
        if ders.is_empty() {
            match buckets.iter_mut().find(|b| b.0 == MultisetMember::Empty) {
                Some(b) => b.2 += 1,
                None => buckets.push((MultisetMember::Empty, None, 1)),
            }
            continue;
        }
        let q = pointwise_quandle(ders, x)?;
        let fp = fingerprint(&q);
        let hit = buckets.iter_mut().find(|(m, f, _)| {
            f.as_ref() == Some(&fp)
                && matches!(m, MultisetMember::Class { representative, .. } if are_isomorphic(&q, representative).is_some())
        });
        match hit {
            Some(b) => b.2 += 1,
            None => {
                let member = match canonical_table(&q) {
                    Some(t) => MultisetMember::Class {
                        representative: FiniteQuandle::from_table(q.order(), t)?,
                        canonical: true,
                    },
                    None => MultisetMember::Class { representative: q, canonical: false },
                };
                buckets.push((member, Some(fp), 1));
            }
        }
    }
    let mut entries: Vec<(MultisetMember, usize)> = buckets.into_iter().map(|(m, _, k)| (m, k)).collect();
    entries.sort_by_key(|(m, _)| m.order());
    Ok(DerivationMultiset { entries })
}
