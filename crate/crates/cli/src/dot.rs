//! Graphviz rendering of the linking structure.
//!
//! Tori are circles, linking is a solid edge, containment a dashed edge.
//! Rigid leaves are boxes and pinch points diamonds. A bi-infinite chain is
//! drawn as one period flanked by ellipsis markers that accumulate at its
//! pinch point.

use std::fmt::Write as _;

use necklace::model::{ChainNode, ChainShape, DefiningSequence, PinchSides, SlotContent};

fn node_id(path: &[i64]) -> String {
    if path.is_empty() {
        return "root".into();
    }
    let parts: Vec<String> = path
        .iter()
        .map(|&i| {
            if i < 0 {
                format!("m{}", -i)
            } else {
                i.to_string()
            }
        })
        .collect();
    format!("t{}", parts.join("_"))
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

struct Writer {
    out: String,
}

impl Writer {
    fn line(&mut self, text: impl AsRef<str>) {
        let _ = writeln!(self.out, "  {}", text.as_ref());
    }

    fn chain(&mut self, container: &[i64], node: &ChainNode, levels: usize) {
        if levels == 0 {
            return;
        }
        let here = node_id(container);
        let tori: Vec<i64> = (0..node.shape.slot_count() as i64).collect();
        for &i in &tori {
            let mut path = container.to_vec();
            path.push(i);
            let id = node_id(&path);
            self.line(format!("{id} [label={}];", quote(&i.to_string())));
            self.line(format!("{here} -- {id} [style=dashed];"));
            match &node.slots[i as usize] {
                SlotContent::RigidLeaf(c) => {
                    self.line(format!(
                        "leaf_{id} [shape=box, label={}];",
                        quote(c.display_name())
                    ));
                    self.line(format!("{id} -- leaf_{id} [style=dashed];"));
                }
                SlotContent::Truncation => {
                    self.line(format!("cut_{id} [shape=plaintext, label=\"...\"];"));
                    self.line(format!("{id} -- cut_{id} [style=dotted];"));
                }
                SlotContent::SubNode(child) => self.chain(&path, child, levels - 1),
            }
        }
        for (a, &i) in tori.iter().enumerate() {
            for &j in &tori[a + 1..] {
                if node.shape.linked(i, j) {
                    let (mut pi, mut pj) = (container.to_vec(), container.to_vec());
                    pi.push(i);
                    pj.push(j);
                    self.line(format!("{} -- {};", node_id(&pi), node_id(&pj)));
                }
            }
        }
        if let ChainShape::BiInfinite { period } = node.shape {
            let sides = node.pinch.map(|p| p.sides).unwrap_or_default();
            let w = format!("w_{here}");
            self.line(format!("{w} [shape=diamond, label=\"w\"];"));
            self.line(format!("{here} -- {w} [style=dashed];"));
            let first = {
                let mut p = container.to_vec();
                p.push(0);
                node_id(&p)
            };
            let last = {
                let mut p = container.to_vec();
                p.push(period as i64 - 1);
                node_id(&p)
            };
            if sides != PinchSides::Positive {
                self.line(format!("lo_{here} [shape=plaintext, label=\"...\"];"));
                self.line(format!("lo_{here} -- {first};"));
                self.line(format!("lo_{here} -- {w} [style=dotted];"));
            }
            if sides != PinchSides::Negative {
                self.line(format!("hi_{here} [shape=plaintext, label=\"...\"];"));
                self.line(format!("{last} -- hi_{here};"));
                self.line(format!("hi_{here} -- {w} [style=dotted];"));
            }
        }
    }
}

/// DOT text for `seq`, drawing at most `depth` chain levels (all when
/// `None`). An outermost chain of a single torus is that torus, so it is
/// drawn as the root itself.
pub fn render_dot(seq: &DefiningSequence, depth: Option<usize>) -> String {
    let mut w = Writer { out: String::new() };
    let _ = writeln!(w.out, "graph necklace {{");
    w.line("node [shape=circle];");
    w.line("root [shape=doublecircle, label=\"root\"];");
    let (start, levels) = match (&seq.root.shape, seq.root.slots.as_slice()) {
        (ChainShape::Path(1), [SlotContent::SubNode(inner)]) => {
            (inner.as_ref(), seq.root.depth() - 1)
        }
        _ => (&seq.root, seq.root.depth()),
    };
    w.chain(&[], start, depth.unwrap_or(levels).min(levels));
    w.out.push_str("}\n");
    w.out
}
