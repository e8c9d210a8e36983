//! Stage-by-stage equivalence of defining sequences, and unsplittability.
//!
//! Two sequences are equivalent exactly when some homeomorphism carries
//! each stage onto the corresponding stage. Combinatorially that is a
//! chain symmetry at every node, aligning slots so that sub-towers match
//! recursively and rigid leaves match by class id. The search tries every
//! candidate symmetry at every level, memoising sub-tower pairs by their
//! canonical encoding.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::autgroup::{slot_symmetry_candidates, ChainSymmetry};
use crate::model::{
    format_path, node_fingerprint, ChainNode, ChainShape, DefiningSequence, PinchSides, SlotContent,
};

mod split;

pub use split::{
    is_unsplittable, is_unsplittable_forest, Bipartition, ChainWitness, Forest, SplitVerdict,
    UnsplittableCertificate,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EquivError {
    #[error("truncated inputs cannot be compared: {0}")]
    Truncation(String),
}

/// Tree of chain symmetries: slot `i` of the first chain goes to slot
/// `symmetry(i)` of the second, and `children[i]` matches the sub-towers
/// in those slots. Slots are storage slots (residues for bi-infinite
/// chains).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CertNode {
    pub shape: ChainShape,
    pub symmetry: ChainSymmetry,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub children: BTreeMap<i64, CertNode>,
}

impl CertNode {
    pub fn identity(node: &ChainNode) -> CertNode {
        CertNode {
            shape: node.shape,
            symmetry: ChainSymmetry::IDENTITY,
            children: node
                .slots
                .iter()
                .enumerate()
                .filter_map(|(i, s)| match s {
                    SlotContent::SubNode(c) => Some((i as i64, CertNode::identity(c))),
                    _ => None,
                })
                .collect(),
        }
    }

    fn image(&self, slot: i64) -> i64 {
        self.symmetry.apply_to_slot(self.shape, slot as usize) as i64
    }

    pub fn inverse(&self) -> CertNode {
        let inv = self.symmetry.inverse();
        CertNode {
            shape: self.shape,
            symmetry: inv.residue_normalized(self.shape),
            children: self
                .children
                .iter()
                .map(|(&i, c)| (self.image(i), c.inverse()))
                .collect(),
        }
    }

    /// Certificate for `A -> C` from `self: A -> B` and `next: B -> C`.
    pub fn then(&self, next: &CertNode) -> Option<CertNode> {
        if self.shape != next.shape {
            return None;
        }
        let mut children = BTreeMap::new();
        for (&i, c) in &self.children {
            let j = self.image(i);
            children.insert(i, c.then(next.children.get(&j)?)?);
        }
        Some(CertNode {
            shape: self.shape,
            symmetry: next
                .symmetry
                .compose(&self.symmetry)
                .residue_normalized(self.shape),
            children,
        })
    }

    /// Checks that this certificate carries `a` onto `b`.
    pub fn verify(&self, a: &ChainNode, b: &ChainNode) -> bool {
        if a.shape != self.shape || b.shape != self.shape || !same_frame(a, b) {
            return false;
        }
        let allowed = node_candidates(a, b).iter().any(|s| {
            s.residue_normalized(self.shape) == self.symmetry.residue_normalized(self.shape)
        });
        if !allowed {
            return false;
        }
        for (i, sa) in a.slots.iter().enumerate() {
            let sb = &b.slots[self.image(i as i64) as usize];
            let ok = match (sa, sb) {
                (SlotContent::RigidLeaf(x), SlotContent::RigidLeaf(y)) => x.id() == y.id(),
                (SlotContent::Truncation, SlotContent::Truncation) => true,
                (SlotContent::SubNode(x), SlotContent::SubNode(y)) => self
                    .children
                    .get(&(i as i64))
                    .is_some_and(|c| c.verify(x, y)),
                _ => false,
            };
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Witness of an equivalence: the symmetry tree from the first input to
/// the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchCertificate {
    pub root: CertNode,
}

impl MatchCertificate {
    pub fn inverse(&self) -> MatchCertificate {
        MatchCertificate {
            root: self.root.inverse(),
        }
    }

    pub fn then(&self, next: &MatchCertificate) -> Option<MatchCertificate> {
        self.root
            .then(&next.root)
            .map(|root| MatchCertificate { root })
    }

    pub fn verify(&self, a: &DefiningSequence, b: &DefiningSequence) -> bool {
        self.root.verify(&a.root, &b.root)
    }

    /// Whether every stage map is the identity.
    pub fn is_identity(&self) -> bool {
        fn go(c: &CertNode) -> bool {
            c.symmetry.is_identity_on(c.shape) && c.children.values().all(go)
        }
        go(&self.root)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent(MatchCertificate),
    Inequivalent(String),
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent(_))
    }

    pub fn certificate(&self) -> Option<&MatchCertificate> {
        match self {
            Equivalence::Equivalent(c) => Some(c),
            Equivalence::Inequivalent(_) => None,
        }
    }
}

fn same_frame(a: &ChainNode, b: &ChainNode) -> bool {
    a.knotted == b.knotted
        && a.pinch.is_some() == b.pinch.is_some()
        && a.slots.len() == b.slots.len()
}

/// Chain symmetries that may carry chain `a` onto chain `b`, given their
/// pinch sidedness. A one-sided bi-infinite chain only admits the identity,
/// or the reflection at 0 onto a chain pinched on the other side.
fn node_candidates(a: &ChainNode, b: &ChainNode) -> Vec<ChainSymmetry> {
    let sides = |n: &ChainNode| n.pinch.map(|p| p.sides).unwrap_or_default();
    match (a.shape, sides(a), sides(b)) {
        (ChainShape::BiInfinite { .. }, PinchSides::Both, PinchSides::Both) => {
            slot_symmetry_candidates(a.shape)
        }
        (ChainShape::BiInfinite { .. }, x, y) if x == y => vec![ChainSymmetry::IDENTITY],
        (ChainShape::BiInfinite { .. }, PinchSides::Both, _)
        | (ChainShape::BiInfinite { .. }, _, PinchSides::Both) => Vec::new(),
        (ChainShape::BiInfinite { .. }, _, _) => vec![ChainSymmetry::Reflection(0)],
        _ => slot_symmetry_candidates(a.shape),
    }
}

fn truncation_depths(node: &ChainNode) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    node.walk(&mut |addr, n| {
        if n.slots.iter().any(|s| matches!(s, SlotContent::Truncation)) {
            out.insert(addr.len() + 1);
        }
    });
    out
}

struct Matcher {
    fingerprints: HashMap<*const ChainNode, String>,
    memo: HashMap<(String, String), Option<CertNode>>,
}

impl Matcher {
    fn fingerprint(&mut self, node: &ChainNode) -> String {
        self.fingerprints
            .entry(node as *const ChainNode)
            .or_insert_with(|| node_fingerprint(node))
            .clone()
    }

    fn match_nodes(&mut self, a: &ChainNode, b: &ChainNode) -> Option<CertNode> {
        if a.shape != b.shape || !same_frame(a, b) {
            return None;
        }
        let key = (self.fingerprint(a), self.fingerprint(b));
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let found = node_candidates(a, b)
            .into_iter()
            .find_map(|sym| self.try_symmetry(a, b, sym));
        self.memo.insert(key, found.clone());
        found
    }

    fn try_symmetry(
        &mut self,
        a: &ChainNode,
        b: &ChainNode,
        sym: ChainSymmetry,
    ) -> Option<CertNode> {
        // Cheap label check before recursing.
        for (i, sa) in a.slots.iter().enumerate() {
            let sb = &b.slots[sym.apply_to_slot(a.shape, i)];
            let ok = match (sa, sb) {
                (SlotContent::RigidLeaf(x), SlotContent::RigidLeaf(y)) => x.id() == y.id(),
                (SlotContent::Truncation, SlotContent::Truncation) => true,
                (SlotContent::SubNode(x), SlotContent::SubNode(y)) => x.shape == y.shape,
                _ => false,
            };
            if !ok {
                return None;
            }
        }
        let mut children = BTreeMap::new();
        for (i, sa) in a.slots.iter().enumerate() {
            if let (SlotContent::SubNode(x), SlotContent::SubNode(y)) =
                (sa, &b.slots[sym.apply_to_slot(a.shape, i)])
            {
                children.insert(i as i64, self.match_nodes(x, y)?);
            }
        }
        Some(CertNode {
            shape: a.shape,
            symmetry: sym.residue_normalized(a.shape),
            children,
        })
    }
}

fn shape_reason(a: &ChainNode, b: &ChainNode, path: &[i64]) -> Option<String> {
    let stage = path.len() + 1;
    let at = if path.is_empty() {
        String::new()
    } else {
        format!(" at {}", format_path(path))
    };
    if a.slots.len() != b.slots.len() {
        return Some(format!(
            "stage-{stage} component counts differ{at}: {} ≠ {}",
            a.slots.len(),
            b.slots.len()
        ));
    }
    if a.shape != b.shape {
        return Some(format!(
            "chain shapes differ{at}: {} vs {}",
            a.shape, b.shape
        ));
    }
    if a.pinch.is_some() != b.pinch.is_some() {
        return Some(format!("pinch markers differ{at}"));
    }
    if a.knotted != b.knotted {
        return Some(format!("knotting differs{at}"));
    }
    None
}

/// Sorted sizes of the chains at each stage below the root.
fn stage_sizes(root: &ChainNode) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    root.walk(&mut |addr, node| {
        if out.len() <= addr.len() {
            out.resize(addr.len() + 1, Vec::new());
        }
        out[addr.len()].push(node.slots.len());
    });
    for v in &mut out {
        v.sort_unstable();
    }
    out
}

fn size_list(v: &[usize]) -> String {
    match v {
        [x] => x.to_string(),
        _ => format!("{v:?}"),
    }
}

fn stage_reason(a: &ChainNode, b: &ChainNode) -> Option<String> {
    let (sa, sb) = (stage_sizes(a), stage_sizes(b));
    (0..sa.len().max(sb.len())).find_map(|k| {
        let (x, y) = (
            sa.get(k).map_or(&[][..], |v| v),
            sb.get(k).map_or(&[][..], |v| v),
        );
        (x != y).then(|| {
            format!(
                "stage-{} component counts differ: {} ≠ {}",
                k + 1,
                size_list(x),
                size_list(y)
            )
        })
    })
}

/// Decides whether `a` and `b` are equivalent, returning a certificate or
/// the first obstruction found.
pub fn sher_equivalent(
    a: &DefiningSequence,
    b: &DefiningSequence,
) -> Result<Equivalence, EquivError> {
    let (da, db) = (truncation_depths(&a.root), truncation_depths(&b.root));
    if da != db {
        return Err(EquivError::Truncation(format!(
            "truncation depths {da:?} vs {db:?}"
        )));
    }
    if let Some(reason) = shape_reason(&a.root, &b.root, &[]) {
        return Ok(Equivalence::Inequivalent(reason));
    }
    let mut m = Matcher {
        fingerprints: HashMap::new(),
        memo: HashMap::new(),
    };
    Ok(match m.match_nodes(&a.root, &b.root) {
        Some(root) => Equivalence::Equivalent(MatchCertificate { root }),
        None => Equivalence::Inequivalent(
            stage_reason(&a.root, &b.root)
                .unwrap_or_else(|| "no chain symmetry aligns the labelled stages".into()),
        ),
    })
}
