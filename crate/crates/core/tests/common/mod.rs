#![allow(dead_code)]

use necklace::autgroup::{slot_symmetry_candidates, ChainSymmetry};
use necklace::model::{ChainNode, ChainShape, DefiningSequence, RigidClass, SlotContent};
use proptest::prelude::*;

pub fn class(tag: usize) -> RigidClass {
    RigidClass::new(format!("k{tag}"), format!("K{tag}"))
}

pub fn with_universe(root: ChainNode) -> DefiningSequence {
    let classes: Vec<RigidClass> = root.rigid_classes().into_iter().cloned().collect();
    DefiningSequence::new(root, classes)
}

fn chain(kind: u8, slots: Vec<SlotContent>) -> ChainNode {
    match kind {
        0 if slots.len() >= 4 => ChainNode::cycle(slots),
        1 if slots.len() >= 3 => ChainNode::bi_infinite(slots),
        _ => ChainNode::path(slots),
    }
}

/// Chain trees of depth at most 3 and width at most 8 over a small pool of
/// rigid classes, so that coincidental symmetries are common.
pub fn chain_tree() -> impl Strategy<Value = ChainNode> {
    let leaf_chain =
        (0u8..3, prop::collection::vec(0usize..3, 1..=8)).prop_map(|(kind, labels)| {
            chain(
                kind,
                labels
                    .into_iter()
                    .map(|l| SlotContent::RigidLeaf(class(l)))
                    .collect(),
            )
        });
    leaf_chain.prop_recursive(2, 64, 8, |inner| {
        (
            0u8..3,
            prop::collection::vec(
                prop_oneof![
                    3 => inner.prop_map(SlotContent::node),
                    1 => (0usize..3).prop_map(|l| SlotContent::RigidLeaf(class(l))),
                ],
                1..=8,
            ),
        )
            .prop_map(|(kind, slots)| chain(kind, slots))
    })
}

/// Copy of `node` with a chosen chain symmetry applied at every node.
pub fn scramble(node: &ChainNode, choices: &mut impl Iterator<Item = usize>) -> ChainNode {
    let candidates = slot_symmetry_candidates(node.shape);
    let sym = candidates[choices.next().unwrap_or(0) % candidates.len()];
    let mut out = sym.relabel(node);
    for slot in out.slots.iter_mut() {
        if let SlotContent::SubNode(child) = slot {
            *slot = SlotContent::node(scramble(child, choices));
        }
    }
    out
}

pub fn cycle_of(labels: &[usize]) -> ChainNode {
    ChainNode::cycle(
        labels
            .iter()
            .map(|&l| SlotContent::RigidLeaf(class(l)))
            .collect(),
    )
}

pub fn dihedral_brute_force(n: usize, labels: &[String]) -> Vec<ChainSymmetry> {
    let shape = ChainShape::Cycle(n);
    let mut out = Vec::new();
    for t in 0..n as i64 {
        for sym in [ChainSymmetry::Shift(t), ChainSymmetry::Reflection(t)] {
            if (0..n as i64).all(|i| labels[sym.apply_on(shape, i) as usize] == labels[i as usize])
            {
                out.push(sym);
            }
        }
    }
    out
}
