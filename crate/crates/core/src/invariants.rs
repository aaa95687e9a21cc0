//! Singularity data `Δ = (k₁, …, k_m)` and the complete invariant `(Θ, Δ)`.
//!
//! Each `kᵢ` is a positive half-integer, stored doubled so that all
//! arithmetic stays in the integers. A principal region that is an ideal
//! `n`-gon contributes `k = (n − 2)/2`, and the `kᵢ` sum to `2g − 2`.

use std::fmt;

use crate::cf::{tail_equivalent, CfKind, RegularCf, TailDecision};
use crate::error::{Error, Result};
use crate::hecke::genus;
use crate::legendre::LegendreStep;
use crate::scalar::Int;

/// Largest genus accepted by [`enumerate_delta`].
pub const MAX_ENUMERATION_GENUS: u64 = 30;

/// A validated multiset of half-integers, kept as doubled parts in
/// non-increasing order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SingularityData {
    doubled: Vec<u64>,
    genus: u64,
}

impl SingularityData {
    /// The parts `2kᵢ`, largest first.
    pub fn doubled_parts(&self) -> &[u64] {
        &self.doubled
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn len(&self) -> usize {
        self.doubled.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doubled.is_empty()
    }

    /// Side counts `nᵢ = 2kᵢ + 2` of the ideal polygons.
    pub fn polygon_sides(&self) -> Vec<u64> {
        self.doubled.iter().map(|k| k + 2).collect()
    }
}

impl fmt::Display for SingularityData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.doubled.iter().map(|&k| format_half(k)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Renders a doubled value as `k` or `k/2`.
pub fn format_half(doubled: u64) -> String {
    if doubled.is_multiple_of(2) {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// Parses `3`, `3/2` or `1.5` into a doubled integer.
pub fn parse_half(s: &str) -> Result<u64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: u64 = num.trim().parse().map_err(|_| bad())?;
        return match den.trim() {
            "1" => num.checked_mul(2).ok_or_else(bad),
            "2" => Ok(num),
            _ => Err(bad()),
        };
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let whole: u64 = whole.parse().map_err(|_| bad())?;
        let half = match frac.trim_end_matches('0') {
            "" => 0,
            "5" => 1,
            _ => return Err(bad()),
        };
        return whole.checked_mul(2).map(|w| w + half).ok_or_else(bad);
    }
    s.parse::<u64>()
        .map_err(|_| bad())?
        .checked_mul(2)
        .ok_or_else(bad)
}

/// Checks `Σ kᵢ = 2g − 2` with every `kᵢ ≥ 1/2`; parts are given doubled.
///
/// For `g ≤ 1` only the empty tuple is accepted.
pub fn validate_delta(doubled: &[u64], g: u64) -> Result<SingularityData> {
    if g < 2 {
        return if doubled.is_empty() {
            Ok(SingularityData {
                doubled: Vec::new(),
                genus: g,
            })
        } else {
            Err(Error::GenusTooSmall(g))
        };
    }
    if doubled.contains(&0) {
        return Err(Error::PartTooSmall);
    }
    let total: u128 = doubled.iter().map(|&k| k as u128).sum();
    let expected = 4 * (g as u128 - 1);
    if total != expected {
        return Err(Error::SumMismatch {
            actual: format_half_wide(total),
            expected: format_half_wide(expected),
        });
    }
    let mut doubled = doubled.to_vec();
    doubled.sort_unstable_by(|a, b| b.cmp(a));
    Ok(SingularityData { doubled, genus: g })
}

fn format_half_wide(doubled: u128) -> String {
    if doubled.is_multiple_of(2) {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

/// Areas of the principal regions as multiples of `π`: an ideal `n`-gon
/// has area `(n − 2)π = 2k·π`.
pub fn polygon_areas(delta: &SingularityData) -> Vec<u64> {
    delta.doubled.clone()
}

/// All valid `Δ` for genus `g`, i.e. the partitions of `4g − 4`, starting
/// from the single part and descending lexicographically.
pub fn enumerate_delta(g: u64) -> Result<DeltaEnumeration> {
    if !(2..=MAX_ENUMERATION_GENUS).contains(&g) {
        return Err(Error::GenusOutOfRange(g));
    }
    Ok(DeltaEnumeration {
        next: Some(vec![4 * (g - 1)]),
        genus: g,
    })
}

/// Lazy iterator returned by [`enumerate_delta`].
#[derive(Clone, Debug)]
pub struct DeltaEnumeration {
    next: Option<Vec<u64>>,
    genus: u64,
}

impl Iterator for DeltaEnumeration {
    type Item = SingularityData;

    fn next(&mut self) -> Option<SingularityData> {
        let current = self.next.take()?;
        self.next = next_partition(&current);
        Some(SingularityData {
            doubled: current,
            genus: self.genus,
        })
    }
}

// successor in reverse-lexicographic order of non-increasing partitions
fn next_partition(parts: &[u64]) -> Option<Vec<u64>> {
    let ones = parts.iter().rev().take_while(|&&k| k == 1).count();
    let head = parts.len() - ones;
    if head == 0 {
        return None;
    }
    let mut out = parts[..head - 1].to_vec();
    let k = parts[head - 1] - 1;
    out.push(k);
    let mut rest = ones as u64 + 1;
    while rest > 0 {
        let take = rest.min(k);
        out.push(take);
        rest -= take;
    }
    Some(out)
}

/// Outcome of comparing two invariants.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum InvariantDecision {
    Equal,
    NotEqual,
    Unknown,
}

impl InvariantDecision {
    pub fn as_str(self) -> &'static str {
        match self {
            InvariantDecision::Equal => "Equal",
            InvariantDecision::NotEqual => "NotEqual",
            InvariantDecision::Unknown => "Unknown",
        }
    }
}

impl fmt::Display for InvariantDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The pair `(Θ, Δ)` on `X₀(N)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaminationInvariant<T: Int> {
    theta: RegularCf<T>,
    delta: SingularityData,
    level: u64,
}

impl<T: Int> LaminationInvariant<T> {
    /// Canonicalizes `theta`, which must be infinite, and checks `delta`
    /// against the genus of `X₀(level)`.
    pub fn new(theta: RegularCf<T>, delta: SingularityData, level: u64) -> Result<Self> {
        if !theta.is_infinite() {
            return Err(Error::UnsupportedKind);
        }
        let g = genus(level)?;
        if delta.genus != g {
            return Err(Error::InvalidDeltaForLevel { level, genus: g });
        }
        Ok(LaminationInvariant {
            theta: theta.canonical(),
            delta,
            level,
        })
    }

    pub fn theta(&self) -> &RegularCf<T> {
        &self.theta
    }

    pub fn delta(&self) -> &SingularityData {
        &self.delta
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    /// True when `Θ` is only known through a finite prefix.
    pub fn is_approximate(&self) -> bool {
        self.theta.kind() == CfKind::Prefix
    }
}

/// Compares two invariants on the same level.
pub fn invariant_equal<T: Int>(
    a: &LaminationInvariant<T>,
    b: &LaminationInvariant<T>,
) -> Result<InvariantDecision> {
    if a.level != b.level {
        return Err(Error::LevelMismatch(a.level, b.level));
    }
    if a.delta != b.delta {
        return Ok(InvariantDecision::NotEqual);
    }
    Ok(match tail_equivalent(&a.theta, &b.theta) {
        TailDecision::Equivalent => InvariantDecision::Equal,
        TailDecision::NotEquivalent => InvariantDecision::NotEqual,
        TailDecision::Unknown => InvariantDecision::Unknown,
    })
}

/// Packages a construction run as an approximate invariant. The slope
/// prefix `[p₀, …, p_k]` is read back from the last emitted product.
pub fn invariant_of_stream<T: Int>(
    steps: &[LegendreStep<T>],
    delta: &SingularityData,
    level: u64,
) -> Result<LaminationInvariant<T>> {
    let last = steps.last().ok_or(Error::EmptyStream)?;
    let g = genus(level)?;
    if delta.genus != g {
        return Err(Error::InvalidDeltaForLevel { level, genus: g });
    }
    let d = last.gamma.decompose()?;
    let mut terms = vec![d.p0];
    terms.extend(d.terms);
    LaminationInvariant::new(RegularCf::prefix_only(terms)?, delta.clone(), level)
}

/// Checks a `Δ` given as doubled parts against the genus of `X₀(level)`,
/// reporting any mismatch as `InvalidDeltaForLevel`.
pub fn delta_for_level(doubled: &[u64], level: u64) -> Result<SingularityData> {
    let g = genus(level)?;
    validate_delta(doubled, g).map_err(|_| Error::InvalidDeltaForLevel { level, genus: g })
}
