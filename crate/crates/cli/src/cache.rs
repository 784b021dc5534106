//! Optional on-disk memo of automorphism groups and action lists.
//!
//! Entries are JSON files named by the SHA-256 of their inputs. Unreadable
//! or stale entries are recomputed and overwritten.

use std::path::PathBuf;

use anyhow::Result;
use knotder_core::autgroup::{automorphism_group, PermutationGroup};
use knotder_core::coloring::Source;
use knotder_core::derivations::{enumerate_actions, Action, ActionTarget};
use knotder_core::perm::Permutation;
use knotder_core::quandle::FiniteQuandle;
use knotder_core::Limits;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Serialize, Deserialize)]
struct StoredGroup {
    degree: usize,
    elements: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct StoredActions {
    group_order: usize,
    actions: Vec<Vec<u32>>,
}

pub struct DiskCache {
    dir: Option<PathBuf>,
}

fn quandle_key(q: &FiniteQuandle) -> Vec<u8> {
    let mut k = (q.order() as u32).to_le_bytes().to_vec();
    for v in q.table() {
        k.extend(v.to_le_bytes());
    }
    k
}

impl DiskCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        DiskCache { dir }
    }

    fn path(&self, kind: &str, key: &[u8]) -> Option<PathBuf> {
        let dir = self.dir.as_ref()?;
        let mut h = Sha256::new();
        h.update(kind.as_bytes());
        h.update(key);
        Some(dir.join(format!("{kind}-{}.json", hex::encode(h.finalize()))))
    }

    fn load<T: for<'de> Deserialize<'de>>(&self, path: &Option<PathBuf>) -> Option<T> {
        let text = std::fs::read_to_string(path.as_ref()?).ok()?;
        serde_json::from_str(&text).ok()
    }

    fn store<T: Serialize>(&self, path: &Option<PathBuf>, value: &T) {
        if let (Some(path), Ok(text)) = (path, serde_json::to_string(value)) {
            if let Some(dir) = path.parent() {
                let _ = std::fs::create_dir_all(dir);
            }
            let _ = std::fs::write(path, text);
        }
    }

    pub fn automorphism_group(&self, q: &FiniteQuandle, limits: &Limits) -> Result<PermutationGroup> {
        let path = self.path("aut", &quandle_key(q));
        if let Some(s) = self.load::<StoredGroup>(&path) {
            let elements: Option<Vec<Permutation>> =
                s.elements.into_iter().map(|e| Permutation::from_images(e).ok()).collect();
            if let Some(g) = elements.and_then(|e| PermutationGroup::from_closed_elements(s.degree, e).ok()) {
                if g.order() <= limits.max_group_order {
                    return Ok(g);
                }
            }
        }
        let g = automorphism_group(q, limits)?;
        let stored = StoredGroup {
            degree: g.degree(),
            elements: g.elements().iter().map(|p| p.images().to_vec()).collect(),
        };
        self.store(&path, &stored);
        Ok(g)
    }

    pub fn target(&self, x: FiniteQuandle, limits: &Limits) -> Result<ActionTarget> {
        let aut = self.automorphism_group(&x, limits)?;
        Ok(ActionTarget::with_group(x, aut))
    }

    pub fn actions(&self, source: Source<'_>, target: &ActionTarget, limits: &Limits) -> Result<Vec<Action>> {
        let mut key = source.content_key();
        key.extend(quandle_key(target.quandle()));
        let path = self.path("actions", &key);
        let id = target.identity_index();
        let order = target.aut().order();
        if let Some(s) = self.load::<StoredActions>(&path) {
            if s.group_order == order && s.actions.iter().flatten().all(|&v| (v as usize) < order) {
                return Ok(s
                    .actions
                    .into_iter()
                    .map(|values| Action { trivial: values.iter().all(|&v| v == id), values })
                    .collect());
            }
        }
        let actions = enumerate_actions(source, target, limits)?;
        let stored = StoredActions { group_order: order, actions: actions.iter().map(|a| a.values.clone()).collect() };
        self.store(&path, &stored);
        Ok(actions)
    }
}
