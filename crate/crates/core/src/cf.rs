//! Regular continued fractions `[p₀; p₁, p₂, …]` with `p₀ ≥ 0` and `pᵢ ≥ 1`.
//!
//! A fraction is finite (a nonnegative rational), eventually periodic (a
//! positive quadratic irrational), or a finite window onto an infinite
//! stream whose continuation is unknown. Convergents follow the usual
//! recursion `hₙ = pₙ·hₙ₋₁ + hₙ₋₂`, `kₙ = pₙ·kₙ₋₁ + kₙ₋₂`; the matrix form is
//! `(1 p₀; 0 1)·(0 1; 1 p₁)·…·(0 1; 1 pₙ) = (hₙ₋₁ hₙ; kₙ₋₁ kₙ)`.

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gl2::IntMat2;
use crate::scalar::Int;
use crate::surd::{real_roots, QuadSurd, Root};

/// Work bound used by [`apply_gl2`] when re-expanding a surd image.
pub const DEFAULT_MAX_TERMS: usize = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CfKind {
    Finite,
    Periodic,
    Prefix,
}

impl CfKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CfKind::Finite => "finite",
            CfKind::Periodic => "periodic",
            CfKind::Prefix => "prefix",
        }
    }
}

/// Outcome of a tail comparison. Finite evidence can confirm a shared tail
/// but never refute one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TailDecision {
    Equivalent,
    NotEquivalent,
    Unknown,
}

impl TailDecision {
    pub fn as_str(self) -> &'static str {
        match self {
            TailDecision::Equivalent => "Equivalent",
            TailDecision::NotEquivalent => "NotEquivalent",
            TailDecision::Unknown => "Unknown",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RegularCf<T> {
    kind: CfKind,
    prefix: Vec<T>,
    period: Vec<T>,
}

fn check_terms<'a, T: Int>(offset: usize, terms: impl IntoIterator<Item = &'a T>) -> Result<()> {
    for (i, t) in terms.into_iter().enumerate() {
        let index = offset + i;
        let ok = if index == 0 {
            !t.is_negative()
        } else {
            t.is_positive()
        };
        if !ok {
            return Err(Error::InvalidTerm {
                index,
                value: t.to_string(),
            });
        }
    }
    Ok(())
}

impl<T: Int> RegularCf<T> {
    /// A finite fraction. Need not be canonical: `[…, p, 1]` is accepted.
    pub fn finite(terms: Vec<T>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyFraction);
        }
        check_terms(0, &terms)?;
        Ok(RegularCf {
            kind: CfKind::Finite,
            prefix: terms,
            period: Vec::new(),
        })
    }

    /// `prefix` followed by `period` repeated forever.
    pub fn periodic(prefix: Vec<T>, period: Vec<T>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyFraction);
        }
        check_terms(0, &prefix)?;
        for (i, t) in period.iter().enumerate() {
            if !t.is_positive() {
                return Err(Error::InvalidTerm {
                    index: prefix.len() + i,
                    value: t.to_string(),
                });
            }
        }
        Ok(RegularCf {
            kind: CfKind::Periodic,
            prefix,
            period,
        })
    }

    /// The first terms of an infinite fraction whose continuation is unknown.
    pub fn prefix_only(terms: Vec<T>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyFraction);
        }
        check_terms(0, &terms)?;
        Ok(RegularCf {
            kind: CfKind::Prefix,
            prefix: terms,
            period: Vec::new(),
        })
    }

    pub fn kind(&self) -> CfKind {
        self.kind
    }

    /// Leading terms (all terms for finite and prefix-only fractions).
    pub fn prefix(&self) -> &[T] {
        &self.prefix
    }

    /// The repeating block; empty unless periodic.
    pub fn period(&self) -> &[T] {
        &self.period
    }

    pub fn is_infinite(&self) -> bool {
        self.kind != CfKind::Finite
    }

    /// Number of known terms, `None` for periodic fractions.
    pub fn available(&self) -> Option<usize> {
        match self.kind {
            CfKind::Periodic => None,
            _ => Some(self.prefix.len()),
        }
    }

    pub fn term(&self, i: usize) -> Option<&T> {
        if i < self.prefix.len() {
            return self.prefix.get(i);
        }
        if self.period.is_empty() {
            return None;
        }
        self.period.get((i - self.prefix.len()) % self.period.len())
    }

    /// The term stream; infinite for periodic fractions.
    pub fn terms(&self) -> impl Iterator<Item = &T> + '_ {
        let cycle: Box<dyn Iterator<Item = &T>> = if self.period.is_empty() {
            Box::new(std::iter::empty())
        } else {
            Box::new(self.period.iter().cycle())
        };
        self.prefix.iter().chain(cycle)
    }

    fn check_depth(&self, depth: usize) -> Result<()> {
        match self.available() {
            Some(n) if depth >= n => Err(Error::DepthExceeded {
                depth,
                available: n,
            }),
            _ => Ok(()),
        }
    }

    /// Convergent `hₙ/kₙ` using terms `p₀…p_depth`. A finite fraction
    /// ignores depth beyond its last term.
    pub fn convergent(&self, depth: usize) -> Result<Ratio<T>> {
        let depth = match self.kind {
            CfKind::Finite => depth.min(self.prefix.len() - 1),
            _ => {
                self.check_depth(depth)?;
                depth
            }
        };
        let (mut h_prev, mut h) = (T::zero(), T::one());
        let (mut k_prev, mut k) = (T::one(), T::zero());
        for p in self.terms().take(depth + 1) {
            let h_next = p.clone() * h.clone() + h_prev;
            let k_next = p.clone() * k.clone() + k_prev;
            h_prev = std::mem::replace(&mut h, h_next);
            k_prev = std::mem::replace(&mut k, k_next);
        }
        Ok(Ratio::new_raw(h, k))
    }

    /// Exact value of a finite fraction.
    pub fn value(&self) -> Option<Ratio<T>> {
        match self.kind {
            CfKind::Finite => self.convergent(self.prefix.len() - 1).ok(),
            _ => None,
        }
    }

    /// `(1 p₀; 0 1)·(0 1; 1 p₁)·…·(0 1; 1 p_depth)`, determinant `(−1)^depth`.
    pub fn matrix(&self, depth: usize) -> Result<IntMat2<T>> {
        self.check_depth(depth)?;
        let terms: Vec<T> = self.terms().take(depth + 1).cloned().collect();
        Ok(terms_matrix(&terms))
    }

    /// The canonical representative of the same number (or stream).
    ///
    /// Finite: the last term is at least 2 unless the fraction is `[p₀]`.
    /// Periodic: primitive period and shortest prefix.
    pub fn canonical(&self) -> Self {
        match self.kind {
            CfKind::Prefix => self.clone(),
            CfKind::Finite => {
                let mut terms = self.prefix.clone();
                if terms.len() > 1 && terms.last().is_some_and(One::is_one) {
                    terms.pop();
                    let last = terms.last_mut().expect("len > 1");
                    *last = last.clone() + T::one();
                }
                RegularCf {
                    kind: CfKind::Finite,
                    prefix: terms,
                    period: Vec::new(),
                }
            }
            CfKind::Periodic => {
                let mut period = primitive_period(&self.period).to_vec();
                let mut prefix = self.prefix.clone();
                while prefix.last().is_some() && prefix.last() == period.last() {
                    prefix.pop();
                    period.rotate_right(1);
                }
                RegularCf {
                    kind: CfKind::Periodic,
                    prefix,
                    period,
                }
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    /// Exact value of a periodic fraction.
    pub fn to_surd(&self) -> Result<QuadSurd<T>> {
        if self.kind != CfKind::Periodic {
            return Err(Error::UnsupportedKind);
        }
        // purely periodic part y = [c₀; c₁, …, c_{L−1}, y] is fixed by Π (cᵢ 1; 1 0)
        let (m00, m01, m10, m11) = standard_product(&self.period);
        let roots = real_roots(&m10, &(m11 - m00), &-m01);
        let y = match roots.last() {
            Some(Root::Surd(y)) => y.clone(),
            _ => unreachable!("an infinite periodic fraction is irrational"),
        };
        if self.prefix.is_empty() {
            return Ok(y);
        }
        let (h1, h0, k1, k0) = standard_product(&self.prefix);
        y.mobius(&h1, &h0, &k1, &k0)
    }
}

/// Product `Π (pᵢ 1; 1 0) = (hₙ hₙ₋₁; kₙ kₙ₋₁)` as a tuple.
fn standard_product<T: Int>(terms: &[T]) -> (T, T, T, T) {
    let (mut a, mut b, mut c, mut d) = (T::one(), T::zero(), T::zero(), T::one());
    for p in terms {
        let na = a.clone() * p.clone() + b;
        let nc = c.clone() * p.clone() + d;
        b = a;
        d = c;
        a = na;
        c = nc;
    }
    (a, b, c, d)
}

/// The matrix form of a term list, by explicit multiplication.
pub fn terms_matrix<T: Int>(terms: &[T]) -> IntMat2<T> {
    let mut iter = terms.iter();
    let mut m = match iter.next() {
        Some(p0) => IntMat2::translation(p0.clone()),
        None => IntMat2::identity(),
    };
    for p in iter {
        m = &m * &IntMat2::generator(p.clone());
    }
    m
}

fn primitive_period<T: PartialEq>(period: &[T]) -> &[T] {
    let n = period.len();
    for len in 1..n {
        if n.is_multiple_of(len) && (len..n).all(|i| period[i] == period[i - len]) {
            return &period[..len];
        }
    }
    period
}

fn is_rotation<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len()
        && (0..a.len().max(1)).any(|s| (0..a.len()).all(|i| a[(i + s) % a.len()] == b[i]))
}

/// The finite canonical fraction of a nonnegative rational (Euclid).
pub fn expand_rational<T: Int>(x: &Ratio<T>) -> Result<RegularCf<T>> {
    if x.is_negative() {
        return Err(Error::NegativeInput(x.to_string()));
    }
    let (mut num, mut den) = (x.numer().clone(), x.denom().clone());
    let mut terms = Vec::new();
    while !den.is_zero() {
        let (quot, rem) = num.div_mod_floor(&den);
        terms.push(quot);
        num = std::mem::replace(&mut den, rem);
    }
    // Euclid never ends in 1 except for [1], so this is already canonical
    RegularCf::finite(terms)
}

/// The periodic canonical fraction of a positive quadratic irrational.
///
/// The period is detected exactly, by recurrence of the complete quotient.
pub fn expand_surd<T: Int>(x: &QuadSurd<T>, max_terms: usize) -> Result<RegularCf<T>> {
    if !x.is_positive() {
        return Err(Error::NegativeInput(x.to_string()));
    }
    let mut seen: HashMap<QuadSurd<T>, usize> = HashMap::new();
    let mut terms = Vec::new();
    let mut current = x.clone();
    loop {
        if let Some(&start) = seen.get(&current) {
            let period = terms.split_off(start);
            return Ok(RegularCf::periodic(terms, period)?.canonical());
        }
        if terms.len() >= max_terms {
            return Err(Error::PeriodNotFound(max_terms));
        }
        let a = current.floor();
        let next = current.shift_invert(&a);
        seen.insert(current, terms.len());
        terms.push(a);
        current = next;
    }
}

/// Whether two fractions share a tail, i.e. are `GL(2,ℤ)`-equivalent.
///
/// Periodic pairs are decided exactly by comparing primitive periods up to
/// rotation. When a prefix-only fraction is involved, a shared tail counts
/// as witnessed once aligned windows agree on at least half of the shorter
/// known stream; otherwise the answer is `Unknown`.
pub fn tail_equivalent<T: Int>(a: &RegularCf<T>, b: &RegularCf<T>) -> TailDecision {
    use CfKind::*;
    let (a, b) = (a.canonical(), b.canonical());
    match (a.kind, b.kind) {
        (Finite, Finite) => TailDecision::Equivalent,
        (Finite, _) | (_, Finite) => TailDecision::NotEquivalent,
        (Periodic, Periodic) => {
            if is_rotation(&a.period, &b.period) {
                TailDecision::Equivalent
            } else {
                TailDecision::NotEquivalent
            }
        }
        _ if a == b => TailDecision::Equivalent,
        _ if prefix_witness(&a, &b) => TailDecision::Equivalent,
        _ => TailDecision::Unknown,
    }
}

fn prefix_witness<T: Int>(a: &RegularCf<T>, b: &RegularCf<T>) -> bool {
    // shifts cover every phase of a periodic side
    let span = |cf: &RegularCf<T>| cf.available().unwrap_or(cf.prefix.len() + cf.period.len());
    let shortest = [a.available(), b.available()]
        .into_iter()
        .flatten()
        .min()
        .expect("one side is finite");
    let required = shortest.div_ceil(2).max(1);
    for i in 0..span(a) {
        for j in 0..span(b) {
            let overlap = match (a.available(), b.available()) {
                (Some(la), Some(lb)) => (la - i).min(lb - j),
                (Some(la), None) => la - i,
                (None, Some(lb)) => lb - j,
                (None, None) => unreachable!(),
            };
            if overlap >= required && (0..overlap).all(|t| a.term(i + t) == b.term(j + t)) {
                return true;
            }
        }
    }
    false
}

/// The fraction of `(a·θ + b)/(c·θ + d)`, computed exactly.
///
/// Finite inputs use rational arithmetic and accept a zero image; periodic
/// inputs use surd arithmetic. Negative (or infinite) images are rejected.
pub fn apply_gl2<T: Int>(m: &IntMat2<T>, cf: &RegularCf<T>) -> Result<RegularCf<T>> {
    let [a, b, c, d] = m.entries();
    match cf.kind {
        CfKind::Finite => {
            let x = cf.value().expect("finite");
            let num = x.clone() * a.clone() + b.clone();
            let den = x * c.clone() + d.clone();
            if den.is_zero() {
                return Err(Error::ImageNotPositive);
            }
            let image = num / den;
            if image.is_negative() {
                return Err(Error::ImageNotPositive);
            }
            expand_rational(&image)
        }
        CfKind::Periodic => {
            let image = cf.to_surd()?.mobius(a, b, c, d)?;
            if !image.is_positive() {
                return Err(Error::ImageNotPositive);
            }
            expand_surd(&image, DEFAULT_MAX_TERMS)
        }
        CfKind::Prefix => Err(Error::UnsupportedKind),
    }
}

impl<T: Int> fmt::Display for RegularCf<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[T]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        match self.kind {
            CfKind::Finite => write!(f, "[{}]", join(&self.prefix)),
            CfKind::Prefix => write!(f, "[{}, …]", join(&self.prefix)),
            CfKind::Periodic if self.prefix.is_empty() => write!(f, "[({})]", join(&self.period)),
            CfKind::Periodic => write!(f, "[{}, ({})]", join(&self.prefix), join(&self.period)),
        }
    }
}
