//! Builders for the three necklace constructions.
//!
//! * [`build_zm`]: a closed chain of `4m` tori carrying four rigid classes
//!   in period 4, so exactly the rotations by multiples of 4 survive.
//! * [`build_z`]: a bi-infinite chain of period 3 accumulating at a pinch
//!   point, whose symmetries are the shifts by multiples of 3.
//! * [`build_group`]: an open chain of `n + k` tori holding `n` copies of
//!   the first and one copy of the second per torsion entry.
//!
//! Every component draws fresh classes from a [`RigidAllocator`], so no
//! symmetry can carry one component onto another.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::model::{ChainNode, ChainShape, DefiningSequence, RigidClass, SlotContent};

mod grammar;

pub use grammar::{parse_group_text, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("invalid argument: {0}")]
    Domain(String),
}

/// `Z^rank ⊕ Z/m_1 ⊕ … ⊕ Z/m_k`, torsion kept in the order given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    rank: u32,
    torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn new(rank: u32, torsion: Vec<u64>) -> Result<Self, ConstructionError> {
        if rank == 0 && torsion.is_empty() {
            return Err(ConstructionError::Domain(
                "group description is empty".into(),
            ));
        }
        if let Some(m) = torsion.iter().find(|&&m| m < 2) {
            return Err(ConstructionError::Domain(format!(
                "torsion entry {m} is not at least 2"
            )));
        }
        Ok(Self { rank, torsion })
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("Z^{}", self.rank));
        }
        parts.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        write!(f, "{}", parts.join(" x "))
    }
}

/// Issues rigid classes that are fresh within this allocator.
///
/// Ids are `<seed hex>-<counter>`, so allocators with different seeds never
/// collide and equal seeds reproduce a build exactly.
#[derive(Debug, Clone)]
pub struct RigidAllocator {
    seed: u64,
    counter: u64,
    log: Vec<RigidClass>,
}

impl RigidAllocator {
    pub fn seeded(seed: u64) -> Self {
        Self {
            seed,
            counter: 0,
            log: Vec::new(),
        }
    }

    /// Allocator with a random seed.
    pub fn fresh() -> Self {
        Self::seeded(rand::thread_rng().gen())
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn allocate(&mut self) -> RigidClass {
        let class = RigidClass::new(
            format!("{:016x}-{:04}", self.seed, self.counter),
            format!("C{}", self.counter + 1),
        );
        self.counter += 1;
        self.log.push(class.clone());
        class
    }

    /// Every class issued so far, in order.
    pub fn log(&self) -> &[RigidClass] {
        &self.log
    }
}

fn with_own_universe(root: ChainNode) -> DefiningSequence {
    let classes: Vec<RigidClass> = root.rigid_classes().into_iter().cloned().collect();
    DefiningSequence::new(root, classes)
}

fn zm_component(m: u64, alloc: &mut RigidAllocator) -> ChainNode {
    let classes: Vec<RigidClass> = (0..4).map(|_| alloc.allocate()).collect();
    let slots = (0..4 * m as usize)
        .map(|i| SlotContent::RigidLeaf(classes[i % 4].clone()))
        .collect();
    ChainNode::cycle(slots)
}

fn z_component(alloc: &mut RigidAllocator) -> ChainNode {
    let c1 = alloc.allocate();
    let c2 = alloc.allocate();
    let c3 = alloc.allocate();
    // Torus i carries the class of residue i mod 3, with tori 1, 2, 3
    // holding C1, C2, C3.
    ChainNode::bi_infinite(vec![
        SlotContent::RigidLeaf(c3),
        SlotContent::RigidLeaf(c1),
        SlotContent::RigidLeaf(c2),
    ])
}

/// Closed chain of `4m` tori; torus `i` carries class `c_{i mod 4}`.
pub fn build_zm(m: u64, alloc: &mut RigidAllocator) -> Result<DefiningSequence, ConstructionError> {
    if m < 1 {
        return Err(ConstructionError::Domain(format!(
            "m = {m}, expected m >= 1"
        )));
    }
    Ok(with_own_universe(zm_component(m, alloc)))
}

/// Bi-infinite chain of period 3 pinched at `w` on both sides.
pub fn build_z(alloc: &mut RigidAllocator) -> DefiningSequence {
    with_own_universe(z_component(alloc))
}

/// Open chain of `n + k` tori: the first `n` each hold a pinched
/// bi-infinite component, the remaining `k` hold closed chains of
/// `4 m_i` tori.
pub fn build_group(spec: &GroupSpec, alloc: &mut RigidAllocator) -> DefiningSequence {
    let mut slots = Vec::with_capacity(spec.rank as usize + spec.torsion.len());
    for _ in 0..spec.rank {
        slots.push(SlotContent::node(z_component(alloc)));
    }
    for &m in &spec.torsion {
        slots.push(SlotContent::node(zm_component(m, alloc)));
    }
    with_own_universe(ChainNode::path(slots))
}

/// Self-similar tower of `depth` levels of `shape`; the last level holds
/// `leaf` in every slot, or truncation markers when `leaf` is `None`.
pub fn build_uniform_tower(
    shape: ChainShape,
    depth: usize,
    leaf: Option<RigidClass>,
) -> Result<ChainNode, ConstructionError> {
    if depth == 0 {
        return Err(ConstructionError::Domain("depth must be at least 1".into()));
    }
    let make = |slots: Vec<SlotContent>| match shape {
        ChainShape::Cycle(_) => Ok(ChainNode::cycle(slots)),
        ChainShape::Path(_) => Ok(ChainNode::path(slots)),
        ChainShape::BiInfinite { .. } => Err(ConstructionError::Domain(
            "uniform towers are built from finite chains".into(),
        )),
    };
    let n = shape.slot_count();
    let bottom = match leaf {
        Some(c) => SlotContent::RigidLeaf(c),
        None => SlotContent::Truncation,
    };
    let mut node = make(vec![bottom; n])?;
    for _ in 1..depth {
        node = make(vec![SlotContent::node(node); n])?;
    }
    Ok(node)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{navigate, validate, SlotRef};

    #[test]
    fn zm_layout() {
        let s = build_zm(2, &mut RigidAllocator::seeded(1)).unwrap();
        assert!(validate(&s).is_ok());
        assert_eq!(s.root.shape, ChainShape::Cycle(8));
        assert_eq!(s.universe.len(), 4);
        assert_eq!(navigate(&s, &[7]).unwrap(), navigate(&s, &[3]).unwrap());
        assert_ne!(navigate(&s, &[0]).unwrap(), navigate(&s, &[1]).unwrap());
        assert!(build_zm(0, &mut RigidAllocator::seeded(1)).is_err());
    }

    #[test]
    fn z_layout() {
        let mut alloc = RigidAllocator::seeded(9);
        let s = build_z(&mut alloc);
        assert!(validate(&s).is_ok());
        assert!(s.root.pinch.is_some());
        assert_eq!(navigate(&s, &[4]).unwrap(), navigate(&s, &[1]).unwrap());
        match navigate(&s, &[1]).unwrap() {
            SlotRef::RigidLeaf(c) => assert_eq!(c.display_name(), "C1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn group_layout() {
        let spec = GroupSpec::new(2, vec![2]).unwrap();
        let s = build_group(&spec, &mut RigidAllocator::seeded(3));
        assert!(validate(&s).is_ok());
        assert_eq!(s.root.shape, ChainShape::Path(3));
        assert_eq!(s.universe.len(), 3 + 3 + 4);
        let one = build_group(
            &GroupSpec::new(0, vec![6]).unwrap(),
            &mut RigidAllocator::seeded(3),
        );
        assert_eq!(one.root.shape, ChainShape::Path(1));
        match navigate(&one, &[0]).unwrap() {
            SlotRef::SubNode(n) => assert_eq!(n.shape, ChainShape::Cycle(24)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn spec_validation() {
        assert!(GroupSpec::new(0, vec![]).is_err());
        assert!(GroupSpec::new(0, vec![1]).is_err());
        assert_eq!(
            GroupSpec::new(2, vec![2, 4]).unwrap().to_string(),
            "Z^2 x Z/2 x Z/4"
        );
    }

    #[test]
    fn allocator_is_fresh_and_reproducible() {
        let mut a = RigidAllocator::seeded(5);
        let x = a.allocate();
        let y = a.allocate();
        assert_ne!(x, y);
        assert_eq!(RigidAllocator::seeded(5).allocate(), x);
        assert_ne!(RigidAllocator::seeded(6).allocate(), x);
        assert_eq!(a.log().len(), 2);
    }

    #[test]
    fn uniform_tower_depths() {
        let t = build_uniform_tower(ChainShape::Cycle(4), 3, None).unwrap();
        assert_eq!(t.depth(), 3);
        assert!(t.contains_truncation());
        assert!(build_uniform_tower(ChainShape::BiInfinite { period: 3 }, 1, None).is_err());
    }
}
