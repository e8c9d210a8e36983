//! Geometric-index bookkeeping for nested solid tori.
//!
//! Index values are declared facts about nested pairs, checked against the
//! multiplicativity, evenness and index-one rules. Nothing here measures
//! an index from geometry.

use serde::Serialize;
use thiserror::Error;

use crate::model::{ChainNode, ChainShape, SlotContent, ValidationReport, ViolationKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexError {
    #[error("declarations are not nested: {0}")]
    Nesting(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("not an Antoine stage: {0}")]
    Shape(String),
    #[error("composed index overflows 64 bits")]
    Overflow,
}

/// A torus, or union of tori, referred to by label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct NodeRef {
    pub label: String,
    pub knotted: bool,
}

impl NodeRef {
    pub fn unknotted(label: impl Into<String>) -> Self {
        Self {
            label: label.into(),
            knotted: false,
        }
    }
}

/// Declared geometric index of `child_union` inside `parent`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexDecl {
    pub parent: NodeRef,
    pub child_union: Vec<NodeRef>,
    pub value: u64,
}

/// Witness that the boundaries of a torus and its index-one parent are
/// parallel, so the region between them is a product.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParallelCertificate {
    pub inner: NodeRef,
    pub outer: NodeRef,
}

/// Index of the innermost union in the outermost parent of a nested chain
/// `T_0 ⊂ T_1 ⊂ … ⊂ T_r`, listed innermost first.
pub fn compose_index(decls: &[IndexDecl]) -> Result<u64, IndexError> {
    if decls.is_empty() {
        return Err(IndexError::Nesting("no declarations".into()));
    }
    for (i, pair) in decls.windows(2).enumerate() {
        let (inner, outer) = (&pair[0], &pair[1]);
        let nested =
            outer.child_union.len() == 1 && outer.child_union[0].label == inner.parent.label;
        if !nested {
            return Err(IndexError::Nesting(format!(
                "declaration {} has parent {} but declaration {} contains {:?}",
                i,
                inner.parent.label,
                i + 1,
                outer
                    .child_union
                    .iter()
                    .map(|r| &r.label)
                    .collect::<Vec<_>>()
            )));
        }
    }
    decls
        .iter()
        .try_fold(1u64, |acc, d| acc.checked_mul(d.value))
        .ok_or(IndexError::Overflow)
}

/// A union of unknotted tori each of index zero in the parent has even
/// index. `unknotted_index0[i]` says whether member `i` meets that
/// hypothesis; the rule only fires when all of them do.
pub fn check_evenness(decl: &IndexDecl, unknotted_index0: &[bool]) -> ValidationReport {
    let mut report = ValidationReport::default();
    let applies = !decl.child_union.is_empty()
        && unknotted_index0.len() == decl.child_union.len()
        && unknotted_index0.iter().all(|&f| f)
        && decl.child_union.iter().all(|r| !r.knotted);
    if applies && decl.value % 2 == 1 {
        report.push(&[], ViolationKind::OddIndex { value: decl.value });
    }
    report
}

/// Index one between a single unknotted torus and an unknotted parent
/// forces parallel boundaries; index zero does not.
pub fn mark_parallel(decl: &IndexDecl) -> Result<Option<ParallelCertificate>, IndexError> {
    match decl.child_union.as_slice() {
        [child] if !child.knotted && !decl.parent.knotted => {
            Ok((decl.value == 1).then(|| ParallelCertificate {
                inner: child.clone(),
                outer: decl.parent.clone(),
            }))
        }
        [_] => Err(IndexError::Hypothesis("knotted torus".into())),
        members => Err(IndexError::Hypothesis(format!(
            "child union has {} tori, expected one",
            members.len()
        ))),
    }
}

/// Index of the union of an Antoine stage's tori in their parent torus.
///
/// A linked chain of at least four unknotted tori cannot lie in a cell, so
/// its index is positive and even; it is at most 2 because the chain winds
/// once around the parent.
pub fn antoine_stage_index(node: &ChainNode) -> Result<u64, IndexError> {
    match node.shape {
        ChainShape::Cycle(n) if n >= 4 && !node.knotted => Ok(2),
        ChainShape::Cycle(n) if n < 4 => Err(IndexError::Shape(format!("cycle of {n} tori"))),
        ChainShape::Cycle(_) => Err(IndexError::Shape("knotted chain".into())),
        other => Err(IndexError::Shape(format!("{other} is not a closed chain"))),
    }
}

/// Declarations for the stage unions `M_d ⊂ M_{d-1} ⊂ … ⊂ M_0` of a tower
/// of Antoine stages, innermost first, each of value 2.
pub fn stage_index_chain(node: &ChainNode, depth: usize) -> Result<Vec<IndexDecl>, IndexError> {
    let mut current = node;
    let mut decls = Vec::with_capacity(depth);
    for k in 0..depth {
        let value = antoine_stage_index(current)?;
        decls.push(IndexDecl {
            parent: NodeRef::unknotted(format!("M_{k}")),
            child_union: vec![NodeRef::unknotted(format!("M_{}", k + 1))],
            value,
        });
        if k + 1 < depth {
            current = match current.slots.first() {
                Some(SlotContent::SubNode(child)) => child,
                _ => {
                    return Err(IndexError::Shape(format!(
                        "tower has fewer than {depth} stages"
                    )))
                }
            };
        }
    }
    decls.reverse();
    Ok(decls)
}

/// Per-sequence index summary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndexFacts {
    /// Index 2 for every closed chain found.
    pub stage_index: u64,
    pub antoine_stages: usize,
    /// Greatest number of nested closed chains along any branch.
    pub antoine_depth: usize,
    /// `2^antoine_depth`, the index of the deepest stage union in its
    /// outermost Antoine torus.
    pub composed: u64,
}

pub fn index_facts(root: &ChainNode) -> Result<IndexFacts, IndexError> {
    let mut stages = 0;
    let mut err = None;
    root.walk(&mut |_, node| {
        if matches!(node.shape, ChainShape::Cycle(_)) {
            stages += 1;
            if let Err(e) = antoine_stage_index(node) {
                err.get_or_insert(e);
            }
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let depth = antoine_depth(root);
    let composed = 2u64.checked_pow(depth as u32).ok_or(IndexError::Overflow)?;
    Ok(IndexFacts {
        stage_index: 2,
        antoine_stages: stages,
        antoine_depth: depth,
        composed,
    })
}

fn antoine_depth(node: &ChainNode) -> usize {
    let own = usize::from(matches!(node.shape, ChainShape::Cycle(_)));
    own + node
        .slots
        .iter()
        .map(|s| match s {
            SlotContent::SubNode(c) => antoine_depth(c),
            _ => 0,
        })
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain(values: &[u64]) -> Vec<IndexDecl> {
        values
            .iter()
            .enumerate()
            .map(|(i, &value)| IndexDecl {
                parent: NodeRef::unknotted(format!("T{}", i + 1)),
                child_union: vec![NodeRef::unknotted(format!("T{i}"))],
                value,
            })
            .collect()
    }

    #[test]
    fn composition_multiplies() {
        assert_eq!(compose_index(&chain(&[2, 2])), Ok(4));
        assert_eq!(compose_index(&chain(&[1, 7])), Ok(7));
        assert_eq!(compose_index(&chain(&[2, 3, 1])), Ok(6));
    }

    #[test]
    fn composition_requires_nesting() {
        let mut decls = chain(&[2, 2]);
        decls[1].child_union[0].label = "elsewhere".into();
        assert!(matches!(compose_index(&decls), Err(IndexError::Nesting(_))));
        assert!(matches!(compose_index(&[]), Err(IndexError::Nesting(_))));
    }

    #[test]
    fn evenness_rule() {
        let union = IndexDecl {
            parent: NodeRef::unknotted("T"),
            child_union: (0..4)
                .map(|i| NodeRef::unknotted(format!("S{i}")))
                .collect(),
            value: 2,
        };
        assert!(check_evenness(&union, &[true; 4]).is_ok());
        let odd = IndexDecl { value: 3, ..union };
        assert!(!check_evenness(&odd, &[true; 4]).is_ok());
        assert!(check_evenness(&odd, &[true, true, false, true]).is_ok());
        let knotted = IndexDecl {
            parent: NodeRef::unknotted("T"),
            child_union: vec![NodeRef {
                label: "K".into(),
                knotted: true,
            }],
            value: 3,
        };
        assert!(check_evenness(&knotted, &[true]).is_ok());
    }

    #[test]
    fn parallel_rule() {
        let mut d = chain(&[1]).remove(0);
        assert!(mark_parallel(&d).unwrap().is_some());
        d.value = 0;
        assert_eq!(mark_parallel(&d), Ok(None));
        d.child_union.push(NodeRef::unknotted("extra"));
        d.value = 1;
        assert!(matches!(mark_parallel(&d), Err(IndexError::Hypothesis(_))));
    }

    #[test]
    fn stage_index() {
        let c = ChainNode::cycle(vec![SlotContent::Truncation; 24]);
        assert_eq!(antoine_stage_index(&c), Ok(2));
        let p = ChainNode::path(vec![SlotContent::Truncation; 3]);
        assert!(matches!(antoine_stage_index(&p), Err(IndexError::Shape(_))));
    }

    #[test]
    fn tower_composes_to_power_of_two() {
        let mut node = ChainNode::cycle(vec![SlotContent::Truncation; 4]);
        for d in 1..=6 {
            let decls = stage_index_chain(&node, d).unwrap();
            assert_eq!(compose_index(&decls), Ok(1 << d));
            assert_eq!(index_facts(&node).unwrap().composed, 1 << d);
            node = ChainNode::cycle(vec![SlotContent::node(node); 4]);
        }
    }
}
