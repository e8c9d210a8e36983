use std::collections::BTreeMap;
use std::fmt::Write as _;

use necklace::autgroup::{
    homogeneity, tower_automorphisms, GroupDescriptor, NamedGenerator, TowerGroup,
};
use necklace::equivalence::{is_unsplittable, SplitVerdict};
use necklace::genus::{genus_spectrum, GenusClass, GenusReport};
use necklace::index::{index_facts, IndexFacts};
use necklace::model::{ChainShape, DefiningSequence, SlotContent};
use serde::{Serialize, Serializer};

/// A report field that may not apply to the analysed sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Section<T> {
    Value(T),
    NotApplicable(String),
}

impl<T: Serialize> Serialize for Section<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Section::Value(v) => v.serialize(serializer),
            Section::NotApplicable(reason) => {
                #[derive(Serialize)]
                struct Na<'a> {
                    not_applicable: &'a str,
                }
                Na {
                    not_applicable: reason,
                }
                .serialize(serializer)
            }
        }
    }
}

impl<T> Section<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Section::Value(v) => Some(v),
            Section::NotApplicable(_) => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassEntry {
    pub id: String,
    pub name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub root: String,
    pub depth: usize,
    pub chains: usize,
    pub shape_counts: BTreeMap<String, usize>,
    pub approximate: bool,
    pub universe: Vec<ClassEntry>,
    /// Which of the known construction patterns the sequence follows.
    pub pattern: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomogeneitySection {
    pub group: GroupDescriptor,
    pub generators: Vec<NamedGenerator>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Expectation {
    pub expected: String,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub summary: Summary,
    pub homogeneity: Section<HomogeneitySection>,
    pub genus: Section<GenusReport>,
    pub unsplittable: SplitVerdict,
    pub index: Section<IndexFacts>,
    pub tower: Section<TowerGroup>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation: Option<Expectation>,
}

fn leaf_chain(slots: &[SlotContent]) -> bool {
    slots.iter().all(|s| matches!(s, SlotContent::RigidLeaf(_)))
}

fn pattern(seq: &DefiningSequence) -> &'static str {
    let root = &seq.root;
    match root.shape {
        ChainShape::Cycle(_) if leaf_chain(&root.slots) => {
            "closed chain with period-4 rigid labels"
        }
        ChainShape::BiInfinite { .. } if leaf_chain(&root.slots) => "pinched bi-infinite chain",
        ChainShape::Path(_)
            if root.slots.iter().all(|s| match s {
                SlotContent::SubNode(c) => leaf_chain(&c.slots),
                _ => false,
            }) =>
        {
            "composite open chain of components"
        }
        _ => "general chain tree",
    }
}

pub fn analyze(seq: &DefiningSequence) -> AnalysisReport {
    let mut shape_counts = BTreeMap::new();
    let mut chains = 0;
    seq.root.walk(&mut |_, node| {
        chains += 1;
        *shape_counts
            .entry(node.shape.kind().to_owned())
            .or_insert(0) += 1;
    });
    let summary = Summary {
        root: seq.root.shape.to_string(),
        depth: seq.root.depth(),
        chains,
        shape_counts,
        approximate: seq.approximate,
        universe: seq
            .universe
            .values()
            .map(|c| ClassEntry {
                id: c.id().to_owned(),
                name: c.display_name().to_owned(),
            })
            .collect(),
        pattern: pattern(seq),
    };
    let homogeneity = match homogeneity(seq) {
        Ok(h) => Section::Value(HomogeneitySection {
            group: h.group,
            generators: h.generators,
        }),
        Err(e) => Section::NotApplicable(e.to_string()),
    };
    let genus = match genus_spectrum(seq) {
        Ok(g) => Section::Value(g),
        Err(e) => Section::NotApplicable(e.to_string()),
    };
    let index = match index_facts(&seq.root) {
        Ok(f) => Section::Value(f),
        Err(e) => Section::NotApplicable(e.to_string()),
    };
    let tower = match tower_automorphisms(&seq.root, seq.root.depth()) {
        Ok(t) => Section::Value(t),
        Err(e) => Section::NotApplicable(e.to_string()),
    };
    AnalysisReport {
        summary,
        homogeneity,
        genus,
        unsplittable: is_unsplittable(seq),
        index,
        tower,
        expectation: None,
    }
}

fn group_pattern(pattern: &str, group: &GroupDescriptor) -> String {
    match group {
        GroupDescriptor::Abelian(_) => format!("{group} ({pattern} pattern)"),
        _ => group.to_string(),
    }
}

pub fn render_text(report: &AnalysisReport) -> String {
    let s = &report.summary;
    let mut out = String::new();
    let shapes: Vec<String> = s
        .shape_counts
        .iter()
        .map(|(k, v)| format!("{v} {k}"))
        .collect();
    let _ = writeln!(
        out,
        "sequence: {} root, depth {}, {} chains ({}), {} rigid classes{}",
        s.root,
        s.depth,
        s.chains,
        shapes.join(", "),
        s.universe.len(),
        if s.approximate { ", approximate" } else { "" }
    );
    match &report.homogeneity {
        Section::Value(h) => {
            let _ = writeln!(
                out,
                "homogeneity group: {}",
                group_pattern(s.pattern, &h.group)
            );
            for g in &h.generators {
                let order = g.order.map_or("infinite".to_owned(), |o| o.to_string());
                let _ = writeln!(
                    out,
                    "  {} = {} at {:?} (order {order})",
                    g.name, g.placed.symmetry, g.placed.at
                );
            }
        }
        Section::NotApplicable(r) => {
            let _ = writeln!(out, "homogeneity group: not applicable: {r}");
        }
    }
    match &report.genus {
        Section::Value(g) => {
            let mut parts = Vec::new();
            for (genus, class) in g.spectrum.iter().rev() {
                match class {
                    GenusClass::Points(points) => {
                        let p: Vec<String> = points.iter().map(|p| p.to_string()).collect();
                        parts.push(format!(
                            "genus {genus} at {} point(s) {}",
                            points.len(),
                            p.join(" ")
                        ));
                    }
                    GenusClass::AllRemaining => {
                        let rest = if parts.is_empty() {
                            "everywhere"
                        } else {
                            "elsewhere"
                        };
                        parts.push(format!("genus {genus} {rest}"));
                    }
                }
            }
            let _ = writeln!(out, "local genus: {}", parts.join("; "));
        }
        Section::NotApplicable(r) => {
            let _ = writeln!(out, "local genus: not applicable: {r}");
        }
    }
    match &report.unsplittable {
        SplitVerdict::Unsplittable(c) => {
            let closed = c
                .chains
                .iter()
                .filter(|w| w.closing_torus.is_some())
                .count();
            let _ = writeln!(
                out,
                "unsplittable: yes, {} connected chain(s){}",
                c.chains.len(),
                if closed > 0 {
                    format!(", {closed} closed by an extra torus")
                } else {
                    String::new()
                }
            );
        }
        SplitVerdict::Splittable(b) => {
            let _ = writeln!(out, "unsplittable: no, {:?} | {:?}", b.side_a, b.side_b);
        }
    }
    match &report.index {
        Section::Value(f) => {
            let _ = writeln!(
                out,
                "geometric index: {} closed stage(s) of index {}, nesting depth {}, composed index {}",
                f.antoine_stages, f.stage_index, f.antoine_depth, f.composed
            );
        }
        Section::NotApplicable(r) => {
            let _ = writeln!(out, "geometric index: not applicable: {r}");
        }
    }
    if let Section::Value(t) = &report.tower {
        let _ = writeln!(
            out,
            "uniform tower: {} to depth {} (upper bound on the homogeneity group)",
            t.group, t.depth
        );
    }
    if let Some(e) = &report.expectation {
        let _ = writeln!(
            out,
            "expected {}: {}",
            e.expected,
            if e.matches { "match" } else { "MISMATCH" }
        );
    }
    out
}
