//! Finitely generated abelian groups in invariant-factor form.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AbelianError {
    #[error("torsion entry {0} is not at least 2")]
    Domain(u64),
    #[error("invariant factor overflows 64 bits")]
    Overflow,
}

/// `Z^rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `2 <= d_1 | d_2 | … | d_k`.
///
/// The representation is unique per isomorphism class, so derived equality
/// is group isomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FgAbelianGroup {
    rank: u32,
    #[serde(rename = "factors")]
    invariant_factors: Vec<u64>,
}

impl FgAbelianGroup {
    pub fn trivial() -> Self {
        Self {
            rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn free(rank: u32) -> Self {
        Self {
            rank,
            invariant_factors: Vec::new(),
        }
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        if self.rank > 0 {
            return None;
        }
        self.invariant_factors
            .iter()
            .try_fold(1u64, |acc, &d| acc.checked_mul(d))
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> Result<FgAbelianGroup, AbelianError> {
        let torsion: Vec<u64> = self
            .invariant_factors
            .iter()
            .chain(&other.invariant_factors)
            .copied()
            .collect();
        canonical_invariants(self.rank + other.rank, &torsion)
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_owned()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" x "))
    }
}

fn prime_power_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Invariant-factor form of `Z^rank ⊕ Z/m_1 ⊕ … ⊕ Z/m_k`.
///
/// Each `m_i` is split into prime powers; for every prime the exponents
/// are sorted descending and the `j`-th largest invariant factor collects
/// the `j`-th largest power of each prime.
pub fn canonical_invariants(rank: u32, torsion: &[u64]) -> Result<FgAbelianGroup, AbelianError> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &m in torsion {
        if m < 2 {
            return Err(AbelianError::Domain(m));
        }
        for (p, e) in prime_power_factors(m) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let width = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; width];
    for (p, exps) in by_prime.iter_mut() {
        exps.sort_unstable_by(|a, b| b.cmp(a));
        for (j, &e) in exps.iter().enumerate() {
            let power = p.checked_pow(e).ok_or(AbelianError::Overflow)?;
            let slot = width - 1 - j;
            factors[slot] = factors[slot]
                .checked_mul(power)
                .ok_or(AbelianError::Overflow)?;
        }
    }
    Ok(FgAbelianGroup {
        rank,
        invariant_factors: factors,
    })
}

pub fn group_isomorphic(a: &FgAbelianGroup, b: &FgAbelianGroup) -> bool {
    a == b
}
