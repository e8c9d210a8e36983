use num_bigint::BigUint;
use serde::Serialize;

use super::{chain_automorphisms, AutError, ChainAutomorphisms, GroupDescriptor, PlacedSymmetry};
use crate::model::{format_path, ChainNode, ChainShape, SlotContent};

/// Combinatorial automorphism group of a uniform finite tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TowerGroup {
    pub group: GroupDescriptor,
    /// Order of the symmetry group of a single chain of the tower.
    pub chain_order: u64,
    pub depth: usize,
    /// Always set: the group bounds the ambient realisable symmetries from
    /// above and is not claimed to equal them.
    pub upper_bound: bool,
}

#[derive(PartialEq)]
enum CutLabel<'a> {
    Leaf(&'a str),
    Truncation,
    Subtree,
}

fn cut_label(slot: &SlotContent) -> CutLabel<'_> {
    match slot {
        SlotContent::RigidLeaf(c) => CutLabel::Leaf(c.id()),
        SlotContent::Truncation => CutLabel::Truncation,
        SlotContent::SubNode(_) => CutLabel::Subtree,
    }
}

/// Automorphisms of the labelled tree-with-chain-adjacency obtained by
/// cutting `node` after `depth` levels.
///
/// Every chain in the first `depth` levels must share the root's shape and
/// every slot at the cut must carry the same label (one rigid class, all
/// truncations, or all sub-towers). The group is then the iterated wreath
/// product of the chain's dihedral-type group with itself, of order
/// `|G| * |Aut(depth - 1)|^n`.
pub fn tower_automorphisms(node: &ChainNode, depth: usize) -> Result<TowerGroup, AutError> {
    let shape = node.shape;
    if !shape.is_finite() {
        return Err(AutError::Shape(
            "bi-infinite towers have infinite automorphism groups".into(),
        ));
    }
    let mut level: Vec<(Vec<i64>, &ChainNode)> = vec![(Vec::new(), node)];
    for l in 0..depth {
        let mut next = Vec::new();
        let mut cut: Option<CutLabel> = None;
        for (addr, n) in &level {
            if n.shape != shape || n.pinch.is_some() || n.knotted != node.knotted {
                return Err(AutError::Shape(format!(
                    "chain at {} is {}, expected {shape}",
                    format_path(addr),
                    n.shape
                )));
            }
            for (i, slot) in n.slots.iter().enumerate() {
                if l + 1 < depth {
                    match slot {
                        SlotContent::SubNode(child) => {
                            let mut a = addr.clone();
                            a.push(i as i64);
                            next.push((a, child.as_ref()));
                        }
                        _ => {
                            return Err(AutError::Shape(format!(
                                "tower at {} is shallower than depth {depth}",
                                format_path(addr)
                            )))
                        }
                    }
                } else {
                    let label = cut_label(slot);
                    match &cut {
                        None => cut = Some(label),
                        Some(first) if *first == label => {}
                        Some(_) => {
                            return Err(AutError::Shape(format!(
                                "labels at depth {depth} are not uniform"
                            )))
                        }
                    }
                }
            }
        }
        level = next;
    }

    let chain = chain_automorphisms(shape, &vec![(); shape.slot_count()]);
    let elements = match &chain {
        ChainAutomorphisms::Finite { elements } => elements.clone(),
        ChainAutomorphisms::Lattice { .. } => unreachable!("finite shape"),
    };
    let chain_order = elements.len() as u64;
    let n = shape.slot_count() as u32;

    let mut order = BigUint::from(1u32);
    for _ in 0..depth {
        order = BigUint::from(chain_order) * order.pow(n);
    }

    // Orbit representatives of the chain group on slots; the group is
    // generated by the chain generators at every reached node, and one
    // representative per orbit suffices at each level.
    let chain_gens = chain.generators(shape);
    let mut reps = Vec::new();
    let mut seen = vec![false; shape.slot_count()];
    for i in 0..shape.slot_count() {
        if seen[i] {
            continue;
        }
        reps.push(i as i64);
        for e in &elements {
            seen[e.apply_to_slot(shape, i)] = true;
        }
    }
    let mut generators = Vec::new();
    collect_generators(
        shape,
        &chain_gens,
        &reps,
        &mut Vec::new(),
        depth,
        &mut generators,
    );

    Ok(TowerGroup {
        group: GroupDescriptor::Finite { order, generators },
        chain_order,
        depth,
        upper_bound: true,
    })
}

fn collect_generators(
    shape: ChainShape,
    chain_gens: &[super::ChainSymmetry],
    reps: &[i64],
    prefix: &mut Vec<i64>,
    remaining: usize,
    out: &mut Vec<PlacedSymmetry>,
) {
    if remaining == 0 {
        return;
    }
    for g in chain_gens {
        out.push(PlacedSymmetry {
            at: prefix.clone(),
            shape,
            symmetry: *g,
        });
    }
    for &r in reps {
        prefix.push(r);
        collect_generators(shape, chain_gens, reps, prefix, remaining - 1, out);
        prefix.pop();
    }
}
