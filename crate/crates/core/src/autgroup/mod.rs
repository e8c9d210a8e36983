//! Symmetry groups of chains, towers and whole defining sequences.
//!
//! Three levels are computed here:
//!
//! * [`chain_automorphisms`]: label-preserving symmetries of a single chain.
//! * [`tower_automorphisms`]: the full combinatorial automorphism group of a
//!   uniform finite tower, an upper bound on what the ambient space realises.
//! * [`homogeneity_group`]: the exact homogeneity group of a sequence built
//!   from rigid pieces with pairwise inequivalent classes across components.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::SerializeMap;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ChainShape, PointAddress};

mod abelian;
mod homogeneity;
mod symmetry;
mod tower;

pub use abelian::{canonical_invariants, group_isomorphic, AbelianError, FgAbelianGroup};
pub use homogeneity::{
    homogeneity, homogeneity_group, ComponentSymmetries, Homogeneity, NamedGenerator,
};
pub use symmetry::{slot_symmetry_candidates, ChainSymmetry};
pub use tower::{tower_automorphisms, TowerGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutError {
    #[error("rigid-tower hypothesis fails: {0}; use tower_automorphisms for an upper bound")]
    Hypothesis(String),
    #[error("unsupported tower shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}

/// Label-preserving symmetries of one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainAutomorphisms {
    /// Every surviving element, for finite chains.
    Finite { elements: Vec<ChainSymmetry> },
    /// Bi-infinite chains: shifts by multiples of `shift_step`, plus the
    /// reflections `i -> c - i` with `c ≡ reflection_axis (mod shift_step)`
    /// when an axis exists.
    Lattice {
        shift_step: u64,
        reflection_axis: Option<i64>,
    },
}

/// Isomorphism type of one chain's symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceStructure {
    Abelian(FgAbelianGroup),
    /// Non-abelian dihedral group; `None` for the infinite dihedral group.
    Dihedral {
        order: Option<u64>,
    },
}

impl ChainAutomorphisms {
    pub fn order(&self) -> Option<usize> {
        match self {
            ChainAutomorphisms::Finite { elements } => Some(elements.len()),
            ChainAutomorphisms::Lattice { .. } => None,
        }
    }

    pub fn contains(&self, shape: ChainShape, sym: &ChainSymmetry) -> bool {
        match self {
            ChainAutomorphisms::Finite { elements } => {
                let s = sym.normalized(shape);
                elements.iter().any(|e| e.normalized(shape) == s)
            }
            ChainAutomorphisms::Lattice {
                shift_step,
                reflection_axis,
            } => {
                let step = *shift_step as i64;
                match *sym {
                    ChainSymmetry::Shift(t) => t.rem_euclid(step) == 0,
                    ChainSymmetry::Reflection(c) => {
                        reflection_axis.is_some_and(|a| (c - a).rem_euclid(step) == 0)
                    }
                }
            }
        }
    }

    pub fn has_reflection(&self) -> bool {
        match self {
            ChainAutomorphisms::Finite { elements } => elements.iter().any(|e| e.is_reflection()),
            ChainAutomorphisms::Lattice {
                reflection_axis, ..
            } => reflection_axis.is_some(),
        }
    }

    /// Smallest non-trivial shift, when one exists.
    pub fn rotation_generator(&self, shape: ChainShape) -> Option<ChainSymmetry> {
        match self {
            ChainAutomorphisms::Finite { elements } => elements
                .iter()
                .filter_map(|e| match e.normalized(shape) {
                    ChainSymmetry::Shift(t) if t > 0 => Some(t),
                    _ => None,
                })
                .min()
                .map(ChainSymmetry::Shift),
            ChainAutomorphisms::Lattice { shift_step, .. } => {
                Some(ChainSymmetry::Shift(*shift_step as i64))
            }
        }
    }

    pub fn reflection_generator(&self) -> Option<ChainSymmetry> {
        match self {
            ChainAutomorphisms::Finite { elements } => {
                elements.iter().copied().find(ChainSymmetry::is_reflection)
            }
            ChainAutomorphisms::Lattice {
                reflection_axis, ..
            } => reflection_axis.map(ChainSymmetry::Reflection),
        }
    }

    pub fn generators(&self, shape: ChainShape) -> Vec<ChainSymmetry> {
        self.rotation_generator(shape)
            .into_iter()
            .chain(self.reflection_generator())
            .collect()
    }

    pub fn structure(&self) -> PieceStructure {
        match self {
            ChainAutomorphisms::Lattice {
                reflection_axis: None,
                ..
            } => PieceStructure::Abelian(FgAbelianGroup::free(1)),
            ChainAutomorphisms::Lattice { .. } => PieceStructure::Dihedral { order: None },
            ChainAutomorphisms::Finite { elements } => {
                let rotations = elements.iter().filter(|e| !e.is_reflection()).count() as u64;
                let reflections = elements.len() as u64 - rotations;
                let torsion: Vec<u64> = match (rotations, reflections) {
                    (1, 0) => vec![],
                    (k, 0) => vec![k],
                    (1, _) => vec![2],
                    (2, _) => vec![2, 2],
                    (k, _) => return PieceStructure::Dihedral { order: Some(2 * k) },
                };
                PieceStructure::Abelian(
                    canonical_invariants(0, &torsion).expect("entries are at least 2"),
                )
            }
        }
    }
}

/// Symmetries of `shape` that preserve `labels` (one label per stored slot;
/// by residue class for bi-infinite chains).
///
/// Finite chains are handled by filtering every dihedral candidate.
/// Bi-infinite chains are solved on one period: a shift by `t` survives iff
/// the residue labels are `t`-periodic, and a reflection `i -> c - i`
/// survives iff `labels[c - i] = labels[i]` for every residue `i`.
pub fn chain_automorphisms<L: PartialEq>(shape: ChainShape, labels: &[L]) -> ChainAutomorphisms {
    assert_eq!(
        labels.len(),
        shape.slot_count(),
        "one label per slot is required"
    );
    let n = labels.len();
    let preserves =
        |s: &ChainSymmetry| (0..n).all(|i| labels[s.apply_to_slot(shape, i)] == labels[i]);
    let candidates = slot_symmetry_candidates(shape);
    match shape {
        ChainShape::BiInfinite { period } => {
            let shift_step = candidates
                .iter()
                .filter_map(|s| match s {
                    ChainSymmetry::Shift(t) if *t > 0 && preserves(s) => Some(*t as u64),
                    _ => None,
                })
                .min()
                .unwrap_or(period as u64);
            let reflection_axis = candidates.iter().find_map(|s| match s {
                ChainSymmetry::Reflection(c) if preserves(s) => Some(*c),
                _ => None,
            });
            ChainAutomorphisms::Lattice {
                shift_step,
                reflection_axis,
            }
        }
        _ => ChainAutomorphisms::Finite {
            elements: candidates.into_iter().filter(preserves).collect(),
        },
    }
}

/// A chain symmetry acting at the chain node reached by `at`, carrying each
/// sub-tower along unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlacedSymmetry {
    pub at: Vec<i64>,
    pub shape: ChainShape,
    pub symmetry: ChainSymmetry,
}

impl PlacedSymmetry {
    pub fn apply(&self, point: &PointAddress) -> PointAddress {
        let depth = self.at.len();
        if point.path.len() <= depth || !point.path.starts_with(&self.at) {
            return point.clone();
        }
        let mut path = point.path.clone();
        path[depth] = self.symmetry.apply_on(self.shape, path[depth]);
        PointAddress {
            path,
            terminal: point.terminal.clone(),
        }
    }
}

/// Computed symmetry group of a structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    Abelian(FgAbelianGroup),
    Finite {
        order: BigUint,
        generators: Vec<PlacedSymmetry>,
    },
    InfiniteNonAbelian(String),
}

impl GroupDescriptor {
    pub fn as_abelian(&self) -> Option<&FgAbelianGroup> {
        match self {
            GroupDescriptor::Abelian(g) => Some(g),
            _ => None,
        }
    }

    pub fn finite_order(&self) -> Option<BigUint> {
        match self {
            GroupDescriptor::Abelian(g) => g.order().map(BigUint::from),
            GroupDescriptor::Finite { order, .. } => Some(order.clone()),
            GroupDescriptor::InfiniteNonAbelian(_) => None,
        }
    }
}

impl Serialize for GroupDescriptor {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GroupDescriptor::Abelian(g) => g.serialize(serializer),
            GroupDescriptor::Finite { order, generators } => {
                let mut map = serializer.serialize_map(Some(2))?;
                map.serialize_entry("order", &order.to_string())?;
                map.serialize_entry("generators", generators)?;
                map.end()
            }
            GroupDescriptor::InfiniteNonAbelian(desc) => {
                let mut map = serializer.serialize_map(Some(1))?;
                map.serialize_entry("infinite_nonabelian", desc)?;
                map.end()
            }
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Abelian(g) => write!(f, "{g}"),
            GroupDescriptor::Finite { order, generators } => write!(
                f,
                "finite group of order {order} on {} generators",
                generators.len()
            ),
            GroupDescriptor::InfiniteNonAbelian(desc) => write!(f, "infinite non-abelian: {desc}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn period_four_labels_on_cycle_eight() {
        let labels = ["A", "B", "C", "D", "A", "B", "C", "D"];
        let auts = chain_automorphisms(ChainShape::Cycle(8), &labels);
        assert_eq!(
            auts,
            ChainAutomorphisms::Finite {
                elements: vec![ChainSymmetry::Shift(0), ChainSymmetry::Shift(4)]
            }
        );
        assert_eq!(
            auts.structure(),
            PieceStructure::Abelian(canonical_invariants(0, &[2]).unwrap())
        );
    }

    #[test]
    fn constant_labels_keep_the_dihedral_group() {
        let auts = chain_automorphisms(ChainShape::Cycle(7), &[0u8; 7]);
        assert_eq!(auts.order(), Some(14));
        assert_eq!(
            auts.structure(),
            PieceStructure::Dihedral { order: Some(14) }
        );
    }

    #[test]
    fn bi_infinite_three_distinct_residues() {
        let auts = chain_automorphisms(ChainShape::BiInfinite { period: 3 }, &["A", "B", "C"]);
        assert_eq!(
            auts,
            ChainAutomorphisms::Lattice {
                shift_step: 3,
                reflection_axis: None
            }
        );
        let shape = ChainShape::BiInfinite { period: 3 };
        assert!(auts.contains(shape, &ChainSymmetry::Shift(-6)));
        assert!(!auts.contains(shape, &ChainSymmetry::Shift(1)));
        assert_eq!(
            auts.structure(),
            PieceStructure::Abelian(FgAbelianGroup::free(1))
        );
    }

    #[test]
    fn bi_infinite_palindrome_has_reflections() {
        let shape = ChainShape::BiInfinite { period: 4 };
        let auts = chain_automorphisms(shape, &["A", "B", "B", "A"]);
        assert!(auts.contains(shape, &ChainSymmetry::Reflection(3)));
        assert_eq!(auts.structure(), PieceStructure::Dihedral { order: None });
    }

    #[test]
    fn path_reversal() {
        let auts = chain_automorphisms(ChainShape::Path(3), &["A", "B", "A"]);
        assert_eq!(auts.order(), Some(2));
        assert_eq!(
            auts.structure(),
            PieceStructure::Abelian(canonical_invariants(0, &[2]).unwrap())
        );
        let auts = chain_automorphisms(ChainShape::Path(3), &["A", "B", "C"]);
        assert_eq!(auts.order(), Some(1));
    }

    #[test]
    fn klein_four_is_abelian() {
        // rotations {0, 2} and reflections {0, 2}
        let auts = chain_automorphisms(ChainShape::Cycle(4), &["A", "B", "A", "B"]);
        assert_eq!(auts.order(), Some(4));
        assert_eq!(
            auts.structure(),
            PieceStructure::Abelian(canonical_invariants(0, &[2, 2]).unwrap())
        );
    }

    #[test]
    fn placed_symmetry_moves_only_its_subtree() {
        let p = PlacedSymmetry {
            at: vec![1],
            shape: ChainShape::Cycle(8),
            symmetry: ChainSymmetry::Shift(4),
        };
        let inside = PointAddress::pinch(vec![1, 6, 2]);
        assert_eq!(p.apply(&inside).path, vec![1, 2, 2]);
        let outside = PointAddress::pinch(vec![0, 6]);
        assert_eq!(p.apply(&outside), outside);
        let at_node = PointAddress::pinch(vec![1]);
        assert_eq!(p.apply(&at_node), at_node);
    }
}
