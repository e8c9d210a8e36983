use serde::Serialize;

use crate::model::{ChainNode, ChainShape, SlotContent};

/// Adjacency-preserving relabelling of one chain's tori.
///
/// `Shift(t)` sends torus `i` to `i + t` (a rotation for cycles) and
/// `Reflection(c)` sends `i` to `c - i`. On a cycle of length `n` both are
/// taken mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainSymmetry {
    Shift(i64),
    Reflection(i64),
}

impl ChainSymmetry {
    pub const IDENTITY: ChainSymmetry = ChainSymmetry::Shift(0);

    pub fn apply(&self, index: i64) -> i64 {
        match *self {
            ChainSymmetry::Shift(t) => index + t,
            ChainSymmetry::Reflection(c) => c - index,
        }
    }

    /// Image of torus `index`, reduced into the slot range on cycles.
    pub fn apply_on(&self, shape: ChainShape, index: i64) -> i64 {
        let image = self.apply(index);
        match shape {
            ChainShape::Cycle(n) if n > 0 => image.rem_euclid(n as i64),
            _ => image,
        }
    }

    /// Image of storage slot `slot`: for bi-infinite chains this acts on
    /// residues mod the period.
    pub fn apply_to_slot(&self, shape: ChainShape, slot: usize) -> usize {
        let image = self.apply(slot as i64);
        match shape {
            ChainShape::Cycle(n) | ChainShape::BiInfinite { period: n } if n > 0 => {
                image.rem_euclid(n as i64) as usize
            }
            _ => image as usize,
        }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &ChainSymmetry) -> ChainSymmetry {
        use ChainSymmetry::*;
        match (*self, *other) {
            (Shift(s), Shift(t)) => Shift(s + t),
            (Shift(s), Reflection(c)) => Reflection(c + s),
            (Reflection(c), Shift(t)) => Reflection(c - t),
            (Reflection(c), Reflection(d)) => Shift(c - d),
        }
    }

    pub fn inverse(&self) -> ChainSymmetry {
        match *self {
            ChainSymmetry::Shift(t) => ChainSymmetry::Shift(-t),
            r @ ChainSymmetry::Reflection(_) => r,
        }
    }

    /// Canonical representative: offsets reduced mod `n` on cycles.
    pub fn normalized(&self, shape: ChainShape) -> ChainSymmetry {
        match shape {
            ChainShape::Cycle(n) if n > 0 => {
                let n = n as i64;
                match *self {
                    ChainSymmetry::Shift(t) => ChainSymmetry::Shift(t.rem_euclid(n)),
                    ChainSymmetry::Reflection(c) => ChainSymmetry::Reflection(c.rem_euclid(n)),
                }
            }
            _ => *self,
        }
    }

    /// Same as [`normalized`](Self::normalized) but also reduces
    /// bi-infinite offsets mod the period, for maps between residues.
    pub fn residue_normalized(&self, shape: ChainShape) -> ChainSymmetry {
        match shape {
            ChainShape::BiInfinite { period } if period > 0 => {
                self.normalized(ChainShape::Cycle(period))
            }
            _ => self.normalized(shape),
        }
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self, ChainSymmetry::Reflection(_))
    }

    pub fn is_identity_on(&self, shape: ChainShape) -> bool {
        match shape {
            ChainShape::Path(1) => true,
            _ => self.normalized(shape) == ChainSymmetry::IDENTITY,
        }
    }

    /// Copy of `node` with slot `i` moved to slot `self(i)`.
    pub fn relabel(&self, node: &ChainNode) -> ChainNode {
        let mut slots = vec![SlotContent::Truncation; node.slots.len()];
        for (i, content) in node.slots.iter().enumerate() {
            slots[self.apply_to_slot(node.shape, i)] = content.clone();
        }
        ChainNode {
            slots,
            ..node.clone()
        }
    }
}

impl std::fmt::Display for ChainSymmetry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ChainSymmetry::Shift(t) => write!(f, "shift {t}"),
            ChainSymmetry::Reflection(c) => write!(f, "reflect i -> {c}-i"),
        }
    }
}

/// Every adjacency-preserving candidate on the stored slots: the dihedral
/// group for cycles, identity and reversal for paths, and residue
/// representatives of shifts and reflections for bi-infinite chains.
pub fn slot_symmetry_candidates(shape: ChainShape) -> Vec<ChainSymmetry> {
    match shape {
        ChainShape::Cycle(n) | ChainShape::BiInfinite { period: n } => {
            let n = n as i64;
            (0..n)
                .map(ChainSymmetry::Shift)
                .chain((0..n).map(ChainSymmetry::Reflection))
                .collect()
        }
        ChainShape::Path(n) if n > 1 => vec![
            ChainSymmetry::IDENTITY,
            ChainSymmetry::Reflection(n as i64 - 1),
        ],
        ChainShape::Path(_) => vec![ChainSymmetry::IDENTITY],
    }
}
