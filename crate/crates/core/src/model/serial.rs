//! Canonical JSON encoding of defining sequences.
//!
//! Nodes are objects with `shape`, `n` (finite chains) or `period`
//! (bi-infinite chains), `slots` in slot order and `pinch`. Rigid leaves are
//! `{"rigid": "<id>"}` and truncation markers are `{"truncated": true}`.
//! The universe is listed sorted by id, so equal sequences encode to
//! identical bytes.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{
    ChainNode, ChainShape, DefiningSequence, PinchMarker, PinchSides, RigidClass, SlotContent,
};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed sequence document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Schema(String),
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SequenceDoc {
    approximate: bool,
    universe: Vec<ClassDoc>,
    root: NodeDoc,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassDoc {
    id: String,
    name: String,
}

#[derive(Serialize, Deserialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
enum ShapeTag {
    Cycle,
    Path,
    BiInfinite,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    shape: ShapeTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    period: Option<usize>,
    slots: Vec<SlotDoc>,
    pinch: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pinch_sides: Option<PinchSides>,
    #[serde(default, skip_serializing_if = "is_false")]
    knotted: bool,
}

fn is_false(b: &bool) -> bool {
    !*b
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RigidDoc {
    rigid: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TruncatedDoc {
    truncated: bool,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SlotDoc {
    Rigid(RigidDoc),
    Truncated(TruncatedDoc),
    Node(Box<NodeDoc>),
}

impl From<&ChainNode> for NodeDoc {
    fn from(node: &ChainNode) -> Self {
        let (shape, n, period) = match node.shape {
            ChainShape::Cycle(n) => (ShapeTag::Cycle, Some(n), None),
            ChainShape::Path(n) => (ShapeTag::Path, Some(n), None),
            ChainShape::BiInfinite { period } => (ShapeTag::BiInfinite, None, Some(period)),
        };
        let slots = node
            .slots
            .iter()
            .map(|s| match s {
                SlotContent::SubNode(child) => {
                    SlotDoc::Node(Box::new(NodeDoc::from(child.as_ref())))
                }
                SlotContent::RigidLeaf(c) => SlotDoc::Rigid(RigidDoc {
                    rigid: c.id().to_owned(),
                }),
                SlotContent::Truncation => SlotDoc::Truncated(TruncatedDoc { truncated: true }),
            })
            .collect();
        NodeDoc {
            shape,
            n,
            period,
            slots,
            pinch: node.pinch.is_some(),
            pinch_sides: node
                .pinch
                .map(|p| p.sides)
                .filter(|s| *s != PinchSides::Both),
            knotted: node.knotted,
        }
    }
}

fn node_from_doc(
    doc: NodeDoc,
    universe: &BTreeMap<String, RigidClass>,
) -> Result<ChainNode, FormatError> {
    let shape = match (doc.shape, doc.n, doc.period) {
        (ShapeTag::Cycle, Some(n), None) => ChainShape::Cycle(n),
        (ShapeTag::Path, Some(n), None) => ChainShape::Path(n),
        (ShapeTag::BiInfinite, None, Some(period)) => ChainShape::BiInfinite { period },
        (ShapeTag::BiInfinite, ..) => {
            return Err(FormatError::Schema(
                "biinfinite nodes take `period` and no `n`".into(),
            ))
        }
        _ => {
            return Err(FormatError::Schema(
                "cycle and path nodes take `n` and no `period`".into(),
            ))
        }
    };
    let pinch = match (doc.pinch, doc.pinch_sides) {
        (true, sides) => Some(PinchMarker {
            sides: sides.unwrap_or_default(),
        }),
        (false, None) => None,
        (false, Some(_)) => {
            return Err(FormatError::Schema(
                "`pinch_sides` given without `pinch`".into(),
            ))
        }
    };
    let mut slots = Vec::with_capacity(doc.slots.len());
    for slot in doc.slots {
        slots.push(match slot {
            SlotDoc::Node(child) => {
                SlotContent::SubNode(Box::new(node_from_doc(*child, universe)?))
            }
            // Undeclared ids survive parsing so validation can report them.
            SlotDoc::Rigid(r) => SlotContent::RigidLeaf(
                universe
                    .get(&r.rigid)
                    .cloned()
                    .unwrap_or_else(|| RigidClass::new(r.rigid.clone(), r.rigid)),
            ),
            SlotDoc::Truncated(TruncatedDoc { truncated: true }) => SlotContent::Truncation,
            SlotDoc::Truncated(_) => {
                return Err(FormatError::Schema("`truncated` must be true".into()))
            }
        });
    }
    Ok(ChainNode {
        shape,
        slots,
        pinch,
        knotted: doc.knotted,
    })
}

/// Deterministic pretty-printed JSON, newline terminated.
pub fn canonical_serialize(seq: &DefiningSequence) -> Vec<u8> {
    let doc = SequenceDoc {
        approximate: seq.approximate,
        universe: seq
            .universe
            .values()
            .map(|c| ClassDoc {
                id: c.id().to_owned(),
                name: c.display_name().to_owned(),
            })
            .collect(),
        root: NodeDoc::from(&seq.root),
    };
    let mut bytes = serde_json::to_vec_pretty(&doc).expect("sequence documents always encode");
    bytes.push(b'\n');
    bytes
}

pub fn deserialize(bytes: &[u8]) -> Result<DefiningSequence, FormatError> {
    let doc: SequenceDoc = serde_json::from_slice(bytes)?;
    let mut universe = BTreeMap::new();
    for c in doc.universe {
        if universe.contains_key(&c.id) {
            return Err(FormatError::Schema(format!(
                "rigid class {} declared twice",
                c.id
            )));
        }
        universe.insert(c.id.clone(), RigidClass::new(c.id, c.name));
    }
    let root = node_from_doc(doc.root, &universe)?;
    Ok(DefiningSequence {
        root,
        universe,
        approximate: doc.approximate,
    })
}

/// Compact structural key of a node, used to memoise subtree comparisons.
pub(crate) fn node_fingerprint(node: &ChainNode) -> String {
    serde_json::to_string(&NodeDoc::from(node)).expect("nodes always encode")
}
