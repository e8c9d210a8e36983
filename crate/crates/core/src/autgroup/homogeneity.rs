use std::collections::HashMap;

use num_bigint::BigUint;
use serde::Serialize;

use super::{
    chain_automorphisms, AutError, ChainAutomorphisms, FgAbelianGroup, GroupDescriptor,
    PieceStructure, PlacedSymmetry,
};
use crate::model::{format_path, ChainShape, DefiningSequence, SlotContent};

/// Surviving symmetries of one chain of the sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentSymmetries {
    pub address: Vec<i64>,
    pub shape: ChainShape,
    /// Chains whose slots hold sub-towers rather than rigid leaves.
    pub super_chain: bool,
    pub automorphisms: ChainAutomorphisms,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NamedGenerator {
    /// `h_j` for a finite rotation, `alpha_j` for a bi-infinite shift,
    /// `r_j` for a reflection; `j` counts components in traversal order.
    pub name: String,
    pub placed: PlacedSymmetry,
    /// `None` for generators of infinite order.
    pub order: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homogeneity {
    pub group: GroupDescriptor,
    pub components: Vec<ComponentSymmetries>,
    pub generators: Vec<NamedGenerator>,
}

#[derive(PartialEq)]
enum Label<'a> {
    Rigid(&'a str),
    Slot(usize),
}

/// Homogeneity group of a sequence satisfying the rigid-tower hypothesis.
///
/// The hypothesis: no truncation; every chain holds either only rigid
/// leaves (a component) or only sub-towers (a super-chain); super-chains
/// are finite; no component is uniformly labelled; and no rigid class is
/// shared between two components. Under
/// it, an automorphism can never move one component onto another, so the
/// group is the direct product of the label-preserving symmetry groups of
/// the individual components.
pub fn homogeneity(seq: &DefiningSequence) -> Result<Homogeneity, AutError> {
    if seq.root.contains_truncation() {
        return Err(AutError::Hypothesis("sequence is truncated".into()));
    }

    let mut owner: HashMap<&str, Vec<i64>> = HashMap::new();
    let mut failure: Option<String> = None;
    let mut components = Vec::new();
    seq.root.walk(&mut |addr, node| {
        if failure.is_some() {
            return;
        }
        let leaves = node
            .slots
            .iter()
            .filter(|s| matches!(s, SlotContent::RigidLeaf(_)))
            .count();
        let super_chain = leaves == 0;
        if leaves != 0 && leaves != node.slots.len() {
            failure = Some(format!(
                "chain at {} mixes rigid leaves and sub-towers",
                format_path(addr)
            ));
            return;
        }
        if !super_chain && node.slots.len() > 1 && node.slots.iter().all(|s| *s == node.slots[0]) {
            failure = Some(format!(
                "component at {} carries one rigid class in every slot",
                format_path(addr)
            ));
            return;
        }
        if super_chain && !node.shape.is_finite() {
            failure = Some(format!(
                "bi-infinite chain of sub-towers at {} repeats its components",
                format_path(addr)
            ));
            return;
        }
        let mut labels = Vec::with_capacity(node.slots.len());
        for (i, slot) in node.slots.iter().enumerate() {
            match slot {
                SlotContent::RigidLeaf(c) => {
                    let first = owner.entry(c.id()).or_insert_with(|| addr.to_vec());
                    if first.as_slice() != addr {
                        failure = Some(format!(
                            "rigid class {} appears in components {} and {}",
                            c.display_name(),
                            format_path(first),
                            format_path(addr)
                        ));
                        return;
                    }
                    labels.push(Label::Rigid(c.id()));
                }
                _ => labels.push(Label::Slot(i)),
            }
        }
        components.push(ComponentSymmetries {
            address: addr.to_vec(),
            shape: node.shape,
            super_chain,
            automorphisms: chain_automorphisms(node.shape, &labels),
        });
    });
    if let Some(reason) = failure {
        return Err(AutError::Hypothesis(reason));
    }

    let mut abelian = FgAbelianGroup::trivial();
    let mut non_abelian: Vec<String> = Vec::new();
    let mut order = Some(BigUint::from(1u32));
    let mut generators = Vec::new();
    let mut component_no = 0;
    let mut super_no = 0;
    for comp in &components {
        let (prefix_rot, prefix_ref, j) = if comp.super_chain {
            super_no += 1;
            ("s", "sr", super_no)
        } else {
            component_no += 1;
            let rot = if comp.shape.is_finite() { "h" } else { "alpha" };
            (rot, "r", component_no)
        };
        let piece_order = comp.automorphisms.order().map(|o| o as u64);
        match comp.automorphisms.structure() {
            PieceStructure::Abelian(g) => abelian = abelian.direct_sum(&g)?,
            PieceStructure::Dihedral { order } => non_abelian.push(match order {
                Some(o) => format!(
                    "dihedral group of order {o} at {}",
                    format_path(&comp.address)
                ),
                None => format!("infinite dihedral group at {}", format_path(&comp.address)),
            }),
        }
        order = match (order, piece_order) {
            (Some(acc), Some(o)) => Some(acc * BigUint::from(o)),
            _ => None,
        };
        if let Some(rot) = comp.automorphisms.rotation_generator(comp.shape) {
            let rotation_order = match &comp.automorphisms {
                ChainAutomorphisms::Finite { elements } => {
                    Some(elements.iter().filter(|e| !e.is_reflection()).count() as u64)
                }
                ChainAutomorphisms::Lattice { .. } => None,
            };
            generators.push(NamedGenerator {
                name: format!("{prefix_rot}_{j}"),
                placed: PlacedSymmetry {
                    at: comp.address.clone(),
                    shape: comp.shape,
                    symmetry: rot,
                },
                order: rotation_order,
            });
        }
        if let Some(refl) = comp.automorphisms.reflection_generator() {
            generators.push(NamedGenerator {
                name: format!("{prefix_ref}_{j}"),
                placed: PlacedSymmetry {
                    at: comp.address.clone(),
                    shape: comp.shape,
                    symmetry: refl,
                },
                order: Some(2),
            });
        }
    }

    let group = if non_abelian.is_empty() {
        GroupDescriptor::Abelian(abelian)
    } else if let Some(order) = order {
        GroupDescriptor::Finite {
            order,
            generators: generators.iter().map(|g| g.placed.clone()).collect(),
        }
    } else {
        let mut desc = non_abelian.join("; ");
        if !abelian.is_trivial() {
            desc.push_str(&format!("; times abelian part {abelian}"));
        }
        GroupDescriptor::InfiniteNonAbelian(desc)
    };
    Ok(Homogeneity {
        group,
        components,
        generators,
    })
}

pub fn homogeneity_group(seq: &DefiningSequence) -> Result<GroupDescriptor, AutError> {
    homogeneity(seq).map(|h| h.group)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::canonical_invariants;
    use crate::model::{ChainNode, RigidClass};

    fn leaves(ids: &[&str]) -> Vec<SlotContent> {
        ids.iter()
            .map(|s| SlotContent::RigidLeaf(RigidClass::new(*s, s.to_uppercase())))
            .collect()
    }

    fn seq(root: ChainNode) -> DefiningSequence {
        let classes: Vec<RigidClass> = root.rigid_classes().into_iter().cloned().collect();
        DefiningSequence::new(root, classes)
    }

    #[test]
    fn single_period_four_component() {
        let s = seq(ChainNode::cycle(leaves(&[
            "a", "b", "c", "d", "a", "b", "c", "d", "a", "b", "c", "d",
        ])));
        let h = homogeneity(&s).unwrap();
        assert_eq!(
            h.group,
            GroupDescriptor::Abelian(canonical_invariants(0, &[3]).unwrap())
        );
        assert_eq!(h.generators.len(), 1);
        assert_eq!(h.generators[0].name, "h_1");
        assert_eq!(h.generators[0].order, Some(3));
    }

    #[test]
    fn shared_classes_break_the_hypothesis() {
        let comp = ChainNode::cycle(leaves(&["a", "b", "c", "d"]));
        let s = seq(ChainNode::path(vec![
            SlotContent::node(comp.clone()),
            SlotContent::node(comp),
        ]));
        assert!(matches!(homogeneity(&s), Err(AutError::Hypothesis(_))));
    }

    #[test]
    fn truncation_breaks_the_hypothesis() {
        let mut slots = leaves(&["a", "b", "c"]);
        slots.push(SlotContent::Truncation);
        let s = seq(ChainNode::cycle(slots));
        assert!(matches!(
            homogeneity_group(&s),
            Err(AutError::Hypothesis(_))
        ));
    }

    #[test]
    fn mixed_chain_breaks_the_hypothesis() {
        let comp = ChainNode::cycle(leaves(&["a", "b", "c", "d"]));
        let mut slots = leaves(&["e", "f", "g"]);
        slots.push(SlotContent::node(comp));
        let s = seq(ChainNode::cycle(slots));
        assert!(matches!(
            homogeneity_group(&s),
            Err(AutError::Hypothesis(_))
        ));
    }

    #[test]
    fn uniform_component_breaks_the_hypothesis() {
        let s = seq(ChainNode::cycle(leaves(&["a", "a", "a", "a", "a"])));
        assert!(matches!(
            homogeneity_group(&s),
            Err(AutError::Hypothesis(_))
        ));
    }

    #[test]
    fn alternating_component_is_dihedral() {
        let s = seq(ChainNode::cycle(leaves(&["a", "b", "a", "b", "a", "b"])));
        match homogeneity_group(&s).unwrap() {
            GroupDescriptor::Finite { order, generators } => {
                assert_eq!(order, BigUint::from(6u32));
                assert_eq!(generators.len(), 2);
            }
            other => panic!("expected a finite non-abelian group, got {other:?}"),
        }
    }

    #[test]
    fn palindromic_bi_infinite_is_infinite_dihedral() {
        let s = seq(ChainNode::bi_infinite(leaves(&["a", "b", "b", "a"])));
        assert!(matches!(
            homogeneity_group(&s).unwrap(),
            GroupDescriptor::InfiniteNonAbelian(_)
        ));
    }
}
