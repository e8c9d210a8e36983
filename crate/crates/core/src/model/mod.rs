//! Combinatorial data model for Antoine-type defining sequences.
//!
//! A defining sequence is a rooted tree. Each [`ChainNode`] is one stage of
//! the construction: a chain of linked solid tori inside a parent torus,
//! described by its [`ChainShape`]. Every torus of the chain is a slot whose
//! content is either a deeper chain, an opaque rigid Cantor set
//! ([`RigidClass`]), or a [`SlotContent::Truncation`] marking where a finite
//! approximation of an infinite tower was cut off.
//!
//! Bi-infinite chains are stored as one period of slot contents. Torus `i`
//! (any integer) resolves to slot `i mod period`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod serial;

pub(crate) use serial::node_fingerprint;
pub use serial::{canonical_serialize, deserialize, FormatError};

/// Opaque stand-in for a rigid Antoine Cantor set.
///
/// Equality, ordering and hashing look only at the id: two classes are
/// equivalently embedded iff their ids agree. A rigid class has no
/// self-equivalence other than the identity.
#[derive(Debug, Clone, Serialize)]
pub struct RigidClass {
    id: String,
    #[serde(rename = "name")]
    display_name: String,
}

impl RigidClass {
    pub fn new(id: impl Into<String>, display_name: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            display_name: display_name.into(),
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn display_name(&self) -> &str {
        &self.display_name
    }
}

impl PartialEq for RigidClass {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for RigidClass {}

impl Hash for RigidClass {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.id.hash(state);
    }
}

impl PartialOrd for RigidClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RigidClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.id.cmp(&other.id)
    }
}

impl fmt::Display for RigidClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_name)
    }
}

/// Linking pattern of one stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChainShape {
    /// Closed chain of `n` tori; torus `i` links `i ± 1 mod n`.
    Cycle(usize),
    /// Open chain of `n` tori; torus `i` links `i ± 1` without wraparound.
    Path(usize),
    /// Tori indexed by all integers, labelled periodically.
    BiInfinite { period: usize },
}

impl ChainShape {
    /// Number of stored slots: `n` for finite chains, one period otherwise.
    pub fn slot_count(&self) -> usize {
        match *self {
            ChainShape::Cycle(n) | ChainShape::Path(n) => n,
            ChainShape::BiInfinite { period } => period,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, ChainShape::BiInfinite { .. })
    }

    /// Whether tori `i` and `j` are linked.
    pub fn linked(&self, i: i64, j: i64) -> bool {
        match *self {
            ChainShape::Cycle(n) => {
                let n = n as i64;
                if n < 2 {
                    return false;
                }
                let d = (i - j).rem_euclid(n);
                i != j && (d == 1 || d == n - 1)
            }
            ChainShape::Path(n) => {
                let n = n as i64;
                (0..n).contains(&i) && (0..n).contains(&j) && (i - j).abs() == 1
            }
            ChainShape::BiInfinite { .. } => (i - j).abs() == 1,
        }
    }

    /// Storage slot holding torus `index`, ignoring pinch sidedness.
    pub fn resolve(&self, index: i64) -> Option<usize> {
        match *self {
            ChainShape::Cycle(n) | ChainShape::Path(n) => {
                usize::try_from(index).ok().filter(|&i| i < n)
            }
            ChainShape::BiInfinite { period } if period > 0 => {
                Some(index.rem_euclid(period as i64) as usize)
            }
            ChainShape::BiInfinite { .. } => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ChainShape::Cycle(_) => "cycle",
            ChainShape::Path(_) => "path",
            ChainShape::BiInfinite { .. } => "biinfinite",
        }
    }
}

impl fmt::Display for ChainShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind(), self.slot_count())
    }
}

impl Serialize for ChainShape {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which halves of a bi-infinite chain accumulate at the pinch point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PinchSides {
    #[default]
    Both,
    /// Only tori with index `>= 0` exist.
    Positive,
    /// Only tori with index `<= 0` exist.
    Negative,
}

/// The limit point `w` of a bi-infinite chain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize)]
pub struct PinchMarker {
    pub sides: PinchSides,
}

impl PinchMarker {
    pub fn both() -> Self {
        Self {
            sides: PinchSides::Both,
        }
    }

    pub fn one_sided(sides: PinchSides) -> Self {
        Self { sides }
    }

    /// Halves of the chain that accumulate at the pinch point.
    pub fn side_count(&self) -> u32 {
        match self.sides {
            PinchSides::Both => 2,
            PinchSides::Positive | PinchSides::Negative => 1,
        }
    }

    pub fn admits(&self, index: i64) -> bool {
        match self.sides {
            PinchSides::Both => true,
            PinchSides::Positive => index >= 0,
            PinchSides::Negative => index <= 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SlotContent {
    SubNode(Box<ChainNode>),
    RigidLeaf(RigidClass),
    Truncation,
}

impl SlotContent {
    pub fn node(node: ChainNode) -> Self {
        SlotContent::SubNode(Box::new(node))
    }
}

/// One stage of a defining sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChainNode {
    pub shape: ChainShape,
    pub slots: Vec<SlotContent>,
    pub pinch: Option<PinchMarker>,
    /// Whether the tori of this chain are knotted. Every construction here
    /// uses unknotted tori.
    pub knotted: bool,
}

impl ChainNode {
    pub fn cycle(slots: Vec<SlotContent>) -> Self {
        Self {
            shape: ChainShape::Cycle(slots.len()),
            slots,
            pinch: None,
            knotted: false,
        }
    }

    pub fn path(slots: Vec<SlotContent>) -> Self {
        Self {
            shape: ChainShape::Path(slots.len()),
            slots,
            pinch: None,
            knotted: false,
        }
    }

    /// Bi-infinite chain pinched at both ends; `period_slots[r]` holds the
    /// content of every torus `i` with `i mod period = r`.
    pub fn bi_infinite(period_slots: Vec<SlotContent>) -> Self {
        Self {
            shape: ChainShape::BiInfinite {
                period: period_slots.len(),
            },
            slots: period_slots,
            pinch: Some(PinchMarker::both()),
            knotted: false,
        }
    }

    /// Whether torus `index` exists in this chain.
    pub fn has_torus(&self, index: i64) -> bool {
        if self.shape.resolve(index).is_none() {
            return false;
        }
        match (self.shape, self.pinch) {
            (ChainShape::BiInfinite { .. }, Some(p)) => p.admits(index),
            _ => true,
        }
    }

    /// Content of torus `index`, honouring periodicity and pinch sidedness.
    pub fn slot_at(&self, index: i64) -> Option<&SlotContent> {
        if !self.has_torus(index) {
            return None;
        }
        self.shape.resolve(index).and_then(|s| self.slots.get(s))
    }

    pub fn contains_truncation(&self) -> bool {
        self.slots.iter().any(|s| match s {
            SlotContent::Truncation => true,
            SlotContent::SubNode(n) => n.contains_truncation(),
            SlotContent::RigidLeaf(_) => false,
        })
    }

    /// Pre-order traversal over every chain node with its address. Slots of
    /// bi-infinite chains are addressed by their representative index in
    /// `0..period`.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&[i64], &'a ChainNode)) {
        let mut path = Vec::new();
        self.walk_inner(&mut path, visit);
    }

    fn walk_inner<'a>(
        &'a self,
        path: &mut Vec<i64>,
        visit: &mut impl FnMut(&[i64], &'a ChainNode),
    ) {
        visit(path, self);
        for (i, slot) in self.slots.iter().enumerate() {
            if let SlotContent::SubNode(child) = slot {
                path.push(i as i64);
                child.walk_inner(path, visit);
                path.pop();
            }
        }
    }

    /// Rigid classes used anywhere below this node.
    pub fn rigid_classes(&self) -> Vec<&RigidClass> {
        let mut out = Vec::new();
        self.walk(&mut |_, node| {
            for slot in &node.slots {
                if let SlotContent::RigidLeaf(c) = slot {
                    out.push(c);
                }
            }
        });
        out
    }

    /// Number of chain levels below and including this node.
    pub fn depth(&self) -> usize {
        1 + self
            .slots
            .iter()
            .map(|s| match s {
                SlotContent::SubNode(n) => n.depth(),
                _ => 0,
            })
            .max()
            .unwrap_or(0)
    }
}

/// A defining sequence: the root stage plus the declared rigid universe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefiningSequence {
    pub root: ChainNode,
    /// Declared rigid classes keyed by id.
    pub universe: BTreeMap<String, RigidClass>,
    /// Set when the sequence is a finite approximation containing
    /// truncation markers.
    pub approximate: bool,
}

impl DefiningSequence {
    /// Builds a sequence, deriving the approximation flag from the tree.
    pub fn new(root: ChainNode, universe: impl IntoIterator<Item = RigidClass>) -> Self {
        let approximate = root.contains_truncation();
        Self {
            root,
            universe: universe
                .into_iter()
                .map(|c| (c.id().to_owned(), c))
                .collect(),
            approximate,
        }
    }

    /// The sub-tower rooted at the chain reached by `path`, as its own
    /// sequence. Its universe is restricted to the classes it uses.
    pub fn subsequence(&self, path: &[i64]) -> Result<DefiningSequence, PathError> {
        match navigate(self, path)? {
            SlotRef::SubNode(node) => {
                let classes: Vec<RigidClass> = node.rigid_classes().into_iter().cloned().collect();
                Ok(DefiningSequence::new(node.clone(), classes))
            }
            _ => Err(PathError::NotAChain { depth: path.len() }),
        }
    }
}

/// Symbolic point of the Cantor set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PointAddress {
    /// Slot indices from the root; bi-infinite steps are integer torus
    /// indices.
    pub path: Vec<i64>,
    pub terminal: Terminal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Terminal {
    /// A point of the rigid Cantor set sitting in the addressed slot.
    /// `sub` is an opaque address inside that set.
    InRigidLeaf { class: String, sub: Option<String> },
    /// The pinch point of the bi-infinite chain reached by the path.
    PinchPoint,
    /// A point beyond a truncation marker.
    TruncationFrontier,
}

impl PointAddress {
    pub fn pinch(path: Vec<i64>) -> Self {
        Self {
            path,
            terminal: Terminal::PinchPoint,
        }
    }

    pub fn in_leaf(path: Vec<i64>, class: &RigidClass) -> Self {
        Self {
            path,
            terminal: Terminal::InRigidLeaf {
                class: class.id().to_owned(),
                sub: None,
            },
        }
    }
}

impl fmt::Display for PointAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_path(&self.path))?;
        match &self.terminal {
            Terminal::InRigidLeaf { class, sub } => {
                write!(f, ":{class}")?;
                if let Some(sub) = sub {
                    write!(f, "/{sub}")?;
                }
                Ok(())
            }
            Terminal::PinchPoint => write!(f, ":w"),
            Terminal::TruncationFrontier => write!(f, ":..."),
        }
    }
}

pub fn format_path(path: &[i64]) -> String {
    let parts: Vec<String> = path.iter().map(|i| i.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Borrowed view of whatever a path reaches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SlotRef<'a> {
    SubNode(&'a ChainNode),
    RigidLeaf(&'a RigidClass),
    Truncation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("step {step}: torus {index} does not exist in this chain")]
    MissingSlot { step: usize, index: i64 },
    #[error("step {step}: cannot descend into a rigid leaf")]
    IntoLeaf { step: usize },
    #[error("step {step}: cannot descend past a truncation marker")]
    IntoTruncation { step: usize },
    #[error("path of length {depth} does not end at a chain")]
    NotAChain { depth: usize },
}

/// Follows `path` from the root. The empty path yields the root chain.
pub fn navigate<'a>(seq: &'a DefiningSequence, path: &[i64]) -> Result<SlotRef<'a>, PathError> {
    navigate_node(&seq.root, path)
}

pub(crate) fn navigate_node<'a>(
    root: &'a ChainNode,
    path: &[i64],
) -> Result<SlotRef<'a>, PathError> {
    let mut current = SlotRef::SubNode(root);
    for (step, &index) in path.iter().enumerate() {
        let node = match current {
            SlotRef::SubNode(node) => node,
            SlotRef::RigidLeaf(_) => return Err(PathError::IntoLeaf { step }),
            SlotRef::Truncation => return Err(PathError::IntoTruncation { step }),
        };
        current = match node.slot_at(index) {
            Some(SlotContent::SubNode(child)) => SlotRef::SubNode(child),
            Some(SlotContent::RigidLeaf(c)) => SlotRef::RigidLeaf(c),
            Some(SlotContent::Truncation) => SlotRef::Truncation,
            None => return Err(PathError::MissingSlot { step, index }),
        };
    }
    Ok(current)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub address: Vec<i64>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", format_path(&self.address), self.kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    #[error("cycle length < 4 (got {n})")]
    CycleTooShort { n: usize },
    #[error("open chain with no tori")]
    EmptyPath,
    #[error("bi-infinite period < 3 (got {period})")]
    PeriodTooShort { period: usize },
    #[error("chain declares {expected} tori but lists {found} slots")]
    SlotCountMismatch { expected: usize, found: usize },
    #[error("bi-infinite slots are not one period: period {period}, {found} slots")]
    NonPeriodic { period: usize, found: usize },
    #[error("missing pinch point")]
    MissingPinch,
    #[error("pinch marker on a finite chain")]
    StrayPinch,
    #[error("rigid class {id} is not declared in the universe")]
    DanglingRigidClass { id: String },
    #[error("truncation in a sequence not flagged as approximate")]
    UnflaggedTruncation,
    #[error("flagged as approximate but contains no truncation")]
    StaleApproximationFlag,
    #[error("union of unknotted index-0 tori declared with odd geometric index {value}")]
    OddIndex { value: u64 },
}

/// Outcome of a structural check; violations are data.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, address: &[i64], kind: ViolationKind) {
        self.violations.push(Violation {
            address: address.to_vec(),
            kind,
        });
    }

    pub fn has(&self, pred: impl Fn(&ViolationKind) -> bool) -> bool {
        self.violations.iter().any(|v| pred(&v.kind))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub fn validate(seq: &DefiningSequence) -> ValidationReport {
    let mut report = ValidationReport::default();
    seq.root.walk(&mut |addr, node| {
        match node.shape {
            ChainShape::Cycle(n) => {
                if n < 4 {
                    report.push(addr, ViolationKind::CycleTooShort { n });
                }
                if node.slots.len() != n {
                    report.push(
                        addr,
                        ViolationKind::SlotCountMismatch {
                            expected: n,
                            found: node.slots.len(),
                        },
                    );
                }
            }
            ChainShape::Path(n) => {
                if n < 1 {
                    report.push(addr, ViolationKind::EmptyPath);
                }
                if node.slots.len() != n {
                    report.push(
                        addr,
                        ViolationKind::SlotCountMismatch {
                            expected: n,
                            found: node.slots.len(),
                        },
                    );
                }
            }
            ChainShape::BiInfinite { period } => {
                if period < 3 {
                    report.push(addr, ViolationKind::PeriodTooShort { period });
                }
                if node.slots.len() != period {
                    report.push(
                        addr,
                        ViolationKind::NonPeriodic {
                            period,
                            found: node.slots.len(),
                        },
                    );
                }
                if node.pinch.is_none() {
                    report.push(addr, ViolationKind::MissingPinch);
                }
            }
        }
        if node.shape.is_finite() && node.pinch.is_some() {
            report.push(addr, ViolationKind::StrayPinch);
        }
        for (i, slot) in node.slots.iter().enumerate() {
            if let SlotContent::RigidLeaf(c) = slot {
                if !seq.universe.contains_key(c.id()) {
                    let mut at = addr.to_vec();
                    at.push(i as i64);
                    report.push(
                        &at,
                        ViolationKind::DanglingRigidClass {
                            id: c.id().to_owned(),
                        },
                    );
                }
            }
        }
    });
    match (seq.root.contains_truncation(), seq.approximate) {
        (true, false) => report.push(&[], ViolationKind::UnflaggedTruncation),
        (false, true) => report.push(&[], ViolationKind::StaleApproximationFlag),
        _ => {}
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn leaf(id: &str) -> SlotContent {
        SlotContent::RigidLeaf(RigidClass::new(id, id.to_uppercase()))
    }

    fn seq_of(root: ChainNode) -> DefiningSequence {
        let classes: Vec<RigidClass> = root.rigid_classes().into_iter().cloned().collect();
        DefiningSequence::new(root, classes)
    }

    #[test]
    fn minimal_antoine_chain_is_valid() {
        let s = seq_of(ChainNode::cycle(vec![
            leaf("a"),
            leaf("b"),
            leaf("c"),
            leaf("d"),
        ]));
        assert!(validate(&s).is_ok());
    }

    #[test]
    fn three_cycle_is_too_short() {
        let s = seq_of(ChainNode::cycle(vec![leaf("a"), leaf("b"), leaf("c")]));
        let report = validate(&s);
        assert!(report.has(|k| matches!(k, ViolationKind::CycleTooShort { n: 3 })));
        assert!(report.to_string().contains("cycle length < 4"));
    }

    #[test]
    fn bi_infinite_needs_pinch() {
        let mut node = ChainNode::bi_infinite(vec![leaf("a"), leaf("b"), leaf("c")]);
        node.pinch = None;
        let report = validate(&seq_of(node));
        assert!(report.has(|k| *k == ViolationKind::MissingPinch));
        assert!(report.to_string().contains("missing pinch point"));
    }

    #[test]
    fn non_periodic_and_dangling_are_reported() {
        let mut node = ChainNode::bi_infinite(vec![leaf("a"), leaf("b"), leaf("c")]);
        node.shape = ChainShape::BiInfinite { period: 4 };
        let s = DefiningSequence::new(node, vec![RigidClass::new("a", "A")]);
        let report = validate(&s);
        assert!(report.has(|k| matches!(
            k,
            ViolationKind::NonPeriodic {
                period: 4,
                found: 3
            }
        )));
        assert!(report.has(|k| matches!(k, ViolationKind::DanglingRigidClass { id } if id == "b")));
    }

    #[test]
    fn truncation_flag_must_agree() {
        let root = ChainNode::cycle(vec![
            leaf("a"),
            SlotContent::Truncation,
            leaf("a"),
            leaf("a"),
        ]);
        let mut s = seq_of(root);
        assert!(s.approximate);
        assert!(validate(&s).is_ok());
        s.approximate = false;
        assert!(validate(&s).has(|k| *k == ViolationKind::UnflaggedTruncation));
    }

    #[test]
    fn navigation() {
        let inner = ChainNode::cycle(vec![leaf("a"), leaf("b"), leaf("c"), leaf("d")]);
        let root = ChainNode::path(vec![SlotContent::node(inner.clone()), leaf("e")]);
        let s = seq_of(root.clone());
        assert_eq!(navigate(&s, &[]).unwrap(), SlotRef::SubNode(&s.root));
        assert_eq!(navigate(&s, &[0]).unwrap(), SlotRef::SubNode(&inner));
        match navigate(&s, &[0, 2]).unwrap() {
            SlotRef::RigidLeaf(c) => assert_eq!(c.id(), "c"),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(
            navigate(&s, &[2]),
            Err(PathError::MissingSlot { step: 0, index: 2 })
        );
        assert_eq!(navigate(&s, &[1, 0]), Err(PathError::IntoLeaf { step: 1 }));
        assert_eq!(
            navigate(&s, &[-1]),
            Err(PathError::MissingSlot { step: 0, index: -1 })
        );
    }

    #[test]
    fn bi_infinite_navigation_is_periodic() {
        let s = seq_of(ChainNode::bi_infinite(vec![
            leaf("a"),
            leaf("b"),
            leaf("c"),
        ]));
        for i in -9..9 {
            assert_eq!(navigate(&s, &[i]).unwrap(), navigate(&s, &[i + 3]).unwrap());
        }
        match navigate(&s, &[-2]).unwrap() {
            SlotRef::RigidLeaf(c) => assert_eq!(c.id(), "b"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_sided_chain_has_no_negative_tori() {
        let mut node = ChainNode::bi_infinite(vec![leaf("a"), leaf("b"), leaf("c")]);
        node.pinch = Some(PinchMarker::one_sided(PinchSides::Positive));
        let s = seq_of(node);
        assert!(navigate(&s, &[5]).is_ok());
        assert!(navigate(&s, &[0]).is_ok());
        assert!(navigate(&s, &[-1]).is_err());
    }

    #[test]
    fn rigid_class_identity_is_the_id() {
        let a = RigidClass::new("x", "first");
        let b = RigidClass::new("x", "second");
        assert_eq!(a, b);
        assert_ne!(a, RigidClass::new("y", "first"));
    }

    #[test]
    fn cycle_adjacency() {
        let s = ChainShape::Cycle(6);
        assert!(s.linked(0, 5) && s.linked(2, 3) && !s.linked(0, 3));
        let p = ChainShape::Path(6);
        assert!(!p.linked(0, 5) && p.linked(4, 5));
        let b = ChainShape::BiInfinite { period: 3 };
        assert!(b.linked(-1, 0) && !b.linked(0, 3));
    }

    #[test]
    fn subsequence_restricts_universe() {
        let inner = ChainNode::cycle(vec![leaf("a"), leaf("b"), leaf("c"), leaf("d")]);
        let s = seq_of(ChainNode::path(vec![SlotContent::node(inner), leaf("e")]));
        let sub = s.subsequence(&[0]).unwrap();
        assert_eq!(sub.universe.len(), 4);
        assert!(validate(&sub).is_ok());
        assert!(s.subsequence(&[1]).is_err());
    }
}
