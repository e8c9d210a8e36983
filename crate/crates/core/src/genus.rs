//! Local genus of points and the genus spectrum of a defining sequence.
//!
//! Every handlebody in these sequences is a solid torus, so a point whose
//! address stays inside torus stages has genus 1. A pinch point is the
//! common limit of the halves of a bi-infinite chain; genus is additive
//! over those halves and each half contributes 1.
//!
//! The slicing argument behind pinch additivity needs a ball and disc
//! arrangement at the pinch point. Every pinch marker is assumed to come
//! with it, as the constructions arrange.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::model::{
    format_path, navigate, ChainNode, ChainShape, DefiningSequence, PathError, PointAddress,
    SlotContent, SlotRef, Terminal,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenusError {
    #[error("address does not resolve: {0}")]
    Address(String),
    #[error("address {0} meets a truncation marker")]
    Truncation(String),
    #[error("unsupported structure: {0}")]
    Unsupported(String),
}

/// The points attaining one genus value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenusClass {
    Points(Vec<PointAddress>),
    AllRemaining,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenusReport {
    pub spectrum: BTreeMap<u32, GenusClass>,
    /// Number of exceptional points listed per genus value.
    pub counts: BTreeMap<u32, usize>,
}

impl GenusReport {
    /// Number of listed points of genus `g`; zero when `g` is not
    /// exceptional.
    pub fn count(&self, g: u32) -> usize {
        self.counts.get(&g).copied().unwrap_or(0)
    }

    pub fn points(&self, g: u32) -> &[PointAddress] {
        match self.spectrum.get(&g) {
            Some(GenusClass::Points(p)) => p,
            _ => &[],
        }
    }
}

fn path_error(p: &PointAddress, e: PathError) -> GenusError {
    match e {
        PathError::IntoTruncation { .. } => GenusError::Truncation(p.to_string()),
        other => GenusError::Address(format!("{p}: {other}")),
    }
}

pub fn local_genus(seq: &DefiningSequence, p: &PointAddress) -> Result<u32, GenusError> {
    let target = navigate(seq, &p.path).map_err(|e| path_error(p, e))?;
    match (&p.terminal, target) {
        (_, SlotRef::Truncation) | (Terminal::TruncationFrontier, _) => {
            Err(GenusError::Truncation(p.to_string()))
        }
        (Terminal::InRigidLeaf { class, .. }, SlotRef::RigidLeaf(c)) if c.id() == class => Ok(1),
        (Terminal::InRigidLeaf { class, .. }, SlotRef::RigidLeaf(c)) => Err(GenusError::Address(
            format!("{p}: slot holds class {}, not {class}", c.id()),
        )),
        (Terminal::InRigidLeaf { .. }, SlotRef::SubNode(_)) => Err(GenusError::Address(format!(
            "{p}: path ends at a chain, not a rigid leaf"
        ))),
        (Terminal::PinchPoint, SlotRef::SubNode(node)) => match node.pinch {
            Some(marker) if !node.shape.is_finite() => Ok(marker.side_count()),
            _ => Err(GenusError::Address(format!(
                "{p}: chain at {} has no pinch point",
                format_path(&p.path)
            ))),
        },
        (Terminal::PinchPoint, SlotRef::RigidLeaf(_)) => Err(GenusError::Address(format!(
            "{p}: path ends at a rigid leaf, not a chain"
        ))),
    }
}

/// Genus values attained on the Cantor set: every pinch point listed with
/// its genus, everything else genus 1.
pub fn genus_spectrum(seq: &DefiningSequence) -> Result<GenusReport, GenusError> {
    if seq.root.contains_truncation() {
        return Err(GenusError::Truncation("sequence is truncated".into()));
    }
    let mut pinches = Vec::new();
    collect_pinches(&seq.root, &mut Vec::new(), false, &mut pinches)?;

    let mut by_genus: BTreeMap<u32, Vec<PointAddress>> = BTreeMap::new();
    for (path, genus) in pinches {
        // One-sided pinch points are genus 1 and fall in with the rest.
        if genus != 1 {
            by_genus
                .entry(genus)
                .or_default()
                .push(PointAddress::pinch(path));
        }
    }
    let mut spectrum = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for (g, points) in by_genus {
        counts.insert(g, points.len());
        spectrum.insert(g, GenusClass::Points(points));
    }
    spectrum.insert(1, GenusClass::AllRemaining);
    Ok(GenusReport { spectrum, counts })
}

fn collect_pinches(
    node: &ChainNode,
    path: &mut Vec<i64>,
    under_bi_infinite: bool,
    out: &mut Vec<(Vec<i64>, u32)>,
) -> Result<(), GenusError> {
    let bi_infinite = matches!(node.shape, ChainShape::BiInfinite { .. });
    if let Some(marker) = node.pinch.filter(|_| bi_infinite) {
        if under_bi_infinite {
            return Err(GenusError::Unsupported(format!(
                "pinch point at {} repeats along an enclosing bi-infinite chain",
                format_path(path)
            )));
        }
        out.push((path.clone(), marker.side_count()));
    }
    for (i, slot) in node.slots.iter().enumerate() {
        if let SlotContent::SubNode(child) = slot {
            path.push(i as i64);
            collect_pinches(child, path, under_bi_infinite || bi_infinite, out)?;
            path.pop();
        }
    }
    Ok(())
}
