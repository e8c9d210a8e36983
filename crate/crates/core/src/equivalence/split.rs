//! Unsplittability via connectivity of linking graphs.
//!
//! A connected chain of linked tori cannot be separated by a sphere, and
//! that persists through every stage. Bi-infinite chains are handled on a
//! window of two periods either side of torus 0, closed off by one extra
//! unknotted torus linked to both ends of the window.

use petgraph::algo::connected_components;
use petgraph::graph::UnGraph;
use petgraph::visit::Dfs;
use serde::Serialize;

use crate::model::{ChainNode, ChainShape, DefiningSequence, PinchSides};

/// The connected linking graph of one chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub address: Vec<i64>,
    pub shape: ChainShape,
    /// Tori of the chain (or of the window examined) in linking order.
    pub tori: Vec<i64>,
    /// Ends of the window joined by the closing torus, for bi-infinite
    /// chains.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closing_torus: Option<(i64, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnsplittableCertificate {
    pub chains: Vec<ChainWitness>,
}

/// Roots on either side of a separating sphere.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Bipartition {
    pub side_a: Vec<String>,
    pub side_b: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVerdict {
    Unsplittable(UnsplittableCertificate),
    Splittable(Bipartition),
}

impl SplitVerdict {
    pub fn is_unsplittable(&self) -> bool {
        matches!(self, SplitVerdict::Unsplittable(_))
    }
}

/// Several named top-level chains with an explicit linking relation among
/// them. Roots with no link between them lie in disjoint balls.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Forest {
    pub roots: Vec<(String, ChainNode)>,
    pub links: Vec<(usize, usize)>,
}

fn window(node: &ChainNode) -> (Vec<i64>, Option<(i64, i64)>) {
    match node.shape {
        ChainShape::Cycle(n) | ChainShape::Path(n) => ((0..n as i64).collect(), None),
        ChainShape::BiInfinite { period } => {
            let p = period as i64;
            let (lo, hi) = match node.pinch.map(|m| m.sides).unwrap_or_default() {
                PinchSides::Both => (-2 * p, 2 * p),
                PinchSides::Positive => (0, 4 * p),
                PinchSides::Negative => (-4 * p, 0),
            };
            ((lo..=hi).collect(), Some((lo, hi)))
        }
    }
}

fn chain_witness(address: &[i64], node: &ChainNode) -> Option<ChainWitness> {
    let (tori, closing) = window(node);
    let mut g = UnGraph::<i64, ()>::new_undirected();
    let ids: Vec<_> = tori.iter().map(|&t| g.add_node(t)).collect();
    for (a, &ta) in tori.iter().enumerate() {
        for (b, &tb) in tori.iter().enumerate().skip(a + 1) {
            if node.shape.linked(ta, tb) {
                g.add_edge(ids[a], ids[b], ());
            }
        }
    }
    if let Some((lo, hi)) = closing {
        let t = g.add_node(i64::MIN);
        let first = ids[tori.iter().position(|&x| x == lo)?];
        let last = ids[tori.iter().position(|&x| x == hi)?];
        g.add_edge(t, first, ());
        g.add_edge(t, last, ());
    }
    (connected_components(&g) == 1).then(|| ChainWitness {
        address: address.to_vec(),
        shape: node.shape,
        tori,
        closing_torus: closing,
    })
}

fn node_certificate(prefix: &[i64], root: &ChainNode) -> Option<Vec<ChainWitness>> {
    let mut out = Vec::new();
    let mut ok = true;
    root.walk(&mut |addr, node| {
        let mut full = prefix.to_vec();
        full.extend_from_slice(addr);
        match chain_witness(&full, node) {
            Some(w) => out.push(w),
            None => ok = false,
        }
    });
    ok.then_some(out)
}

/// Every chain of the sequence has a connected linking graph.
pub fn is_unsplittable(seq: &DefiningSequence) -> SplitVerdict {
    match node_certificate(&[], &seq.root) {
        Some(chains) => SplitVerdict::Unsplittable(UnsplittableCertificate { chains }),
        None => SplitVerdict::Splittable(Bipartition {
            side_a: vec!["root".into()],
            side_b: Vec::new(),
        }),
    }
}

/// Splittable when the roots fall into more than one linking component;
/// the bipartition puts the component of the first root on one side.
pub fn is_unsplittable_forest(forest: &Forest) -> SplitVerdict {
    let mut g = UnGraph::<usize, ()>::new_undirected();
    let ids: Vec<_> = (0..forest.roots.len()).map(|i| g.add_node(i)).collect();
    for &(a, b) in &forest.links {
        if a < ids.len() && b < ids.len() && a != b {
            g.add_edge(ids[a], ids[b], ());
        }
    }
    if forest.roots.len() > 1 && connected_components(&g) > 1 {
        let mut reached = vec![false; ids.len()];
        let mut dfs = Dfs::new(&g, ids[0]);
        while let Some(n) = dfs.next(&g) {
            reached[g[n]] = true;
        }
        let (mut side_a, mut side_b) = (Vec::new(), Vec::new());
        for (i, (name, _)) in forest.roots.iter().enumerate() {
            if reached[i] {
                side_a.push(name.clone());
            } else {
                side_b.push(name.clone());
            }
        }
        return SplitVerdict::Splittable(Bipartition { side_a, side_b });
    }
    let mut chains = Vec::new();
    for (i, (name, root)) in forest.roots.iter().enumerate() {
        match node_certificate(&[i as i64], root) {
            Some(c) => chains.extend(c),
            None => {
                return SplitVerdict::Splittable(Bipartition {
                    side_a: vec![name.clone()],
                    side_b: Vec::new(),
                })
            }
        }
    }
    SplitVerdict::Unsplittable(UnsplittableCertificate { chains })
}
