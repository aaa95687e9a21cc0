//! The inductive construction of a slope `[p₀, p₁, …]` whose partial
//! products `γ_k = (1 p₀; 0 1)·(0 1; 1 p₁)·…·(0 1; 1 p_k)` all have traces in
//! a prescribed admissible set.
//!
//! Appending a term `x` changes the trace affinely: if `γₙ = (A B; C D)` then
//! `tr(γₙ₊₁) = D·x + (B + C)`. The builder walks that progression and takes
//! the smallest admissible `x`.

use std::fmt;
use std::sync::Arc;

use crate::cf::{terms_matrix, RegularCf};
use crate::error::{Error, Result};
use crate::gl2::{geodesic_length, IntMat2};
use crate::scalar::{ln_abs, Int};

/// Default bound on the search for the next term.
pub const DEFAULT_SEARCH_BOUND: u64 = 1_000_000;

/// `p₀ ≥ 0` followed by terms `≥ 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TermSequence<T> {
    terms: Vec<T>,
}

impl<T: Int> TermSequence<T> {
    pub fn new(terms: Vec<T>) -> Result<Self> {
        // same positivity rules as a regular continued fraction
        RegularCf::prefix_only(terms.clone())?;
        Ok(TermSequence { terms })
    }

    pub fn terms(&self) -> &[T] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Appends a term `≥ 1`.
    pub fn extended(&self, x: T) -> Result<Self> {
        if !x.is_positive() {
            return Err(Error::InvalidTerm {
                index: self.terms.len(),
                value: x.to_string(),
            });
        }
        let mut terms = self.terms.clone();
        terms.push(x);
        Ok(TermSequence { terms })
    }

    /// The known slope prefix.
    pub fn to_cf(&self) -> RegularCf<T> {
        RegularCf::prefix_only(self.terms.clone()).expect("validated on construction")
    }

    fn check_index(&self, k: usize) -> Result<()> {
        if k >= self.terms.len() {
            return Err(Error::DepthExceeded {
                depth: k,
                available: self.terms.len(),
            });
        }
        Ok(())
    }
}

/// `γ_k`, the product through `p_k`.
pub fn build_gamma<T: Int>(p: &TermSequence<T>, k: usize) -> Result<IntMat2<T>> {
    p.check_index(k)?;
    Ok(terms_matrix(&p.terms[..=k]))
}

/// The closed-form traces of `γ₀ … γ₃`.
pub fn trace_formula<T: Int>(p: &TermSequence<T>, k: usize) -> Result<T> {
    if k > 3 {
        return Err(Error::UnsupportedIndex(k));
    }
    p.check_index(k)?;
    let t = &p.terms;
    let v = |i: usize| t[i].clone();
    Ok(match k {
        0 => T::two(),
        1 => v(0) + v(1),
        2 => T::two() + v(0) * v(1) + v(1) * v(2),
        _ => v(0) + v(1) + v(2) + v(3) + v(0) * v(1) * v(2) + v(1) * v(2) * v(3),
    })
}

/// `(a, b)` with `tr(γₙ₊₁) = a·pₙ₊₁ + b` for every choice of `pₙ₊₁`.
pub fn trace_affine_coefficients<T: Int>(p: &TermSequence<T>, n: usize) -> Result<(T, T)> {
    let [_, b, c, d] = build_gamma(p, n)?.into_entries();
    Ok((d, b + c))
}

/// Admissibility test on traces, standing in for the set of traces whose
/// axes are simple closed geodesics.
#[derive(Clone)]
pub struct TracePredicate<T> {
    name: String,
    test: Arc<dyn Fn(&T) -> bool + Send + Sync>,
}

impl<T: Int> TracePredicate<T> {
    pub fn new(name: impl Into<String>, test: impl Fn(&T) -> bool + Send + Sync + 'static) -> Self {
        TracePredicate {
            name: name.into(),
            test: Arc::new(test),
        }
    }

    /// `|t| > 2`.
    pub fn hyperbolic() -> Self {
        Self::new("hyperbolic", |t: &T| t.abs() > T::two())
    }

    pub fn never() -> Self {
        Self::new("never", |_: &T| false)
    }

    /// `t ≡ residue (mod modulus)`.
    pub fn modulo(modulus: u64, residue: u64) -> Result<Self> {
        let m = T::from_u64(modulus).filter(|m| m.is_positive());
        let (Some(m), Some(r)) = (m, T::from_u64(residue)) else {
            return Err(Error::UnknownPredicate(format!("mod:{modulus}:{residue}")));
        };
        let r = r.mod_floor(&m);
        Ok(Self::new(
            format!("mod:{modulus}:{residue}"),
            move |t: &T| t.mod_floor(&m) == r,
        ))
    }

    /// Parses `hyperbolic`, `never` or `mod:M:R`.
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "hyperbolic" => Ok(Self::hyperbolic()),
            "never" => Ok(Self::never()),
            _ => {
                let bad = || Error::UnknownPredicate(name.to_string());
                let rest = name.strip_prefix("mod:").ok_or_else(bad)?;
                let (m, r) = rest.split_once(':').ok_or_else(bad)?;
                let m = m.parse().map_err(|_| bad())?;
                let r = r.parse().map_err(|_| bad())?;
                Self::modulo(m, r)
            }
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn admits(&self, trace: &T) -> bool {
        (self.test)(trace)
    }
}

impl<T> fmt::Debug for TracePredicate<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("TracePredicate").field(&self.name).finish()
    }
}

/// Extends `p` by the smallest `x ∈ [1, bound]` whose trace `a·x + b` is
/// above 2 and admitted by `pred`.
pub fn select_next_term<T: Int>(
    p: &TermSequence<T>,
    pred: &TracePredicate<T>,
    bound: u64,
) -> Result<TermSequence<T>> {
    if p.is_empty() {
        return Err(Error::EmptyStream);
    }
    let (a, b) = trace_affine_coefficients(p, p.len() - 1)?;
    let mut x = T::one();
    let mut trace = a.clone() + b;
    for _ in 0..bound {
        if trace > T::two() && pred.admits(&trace) {
            return p.extended(x);
        }
        x = x + T::one();
        trace = trace + a.clone();
    }
    Err(Error::NoAdmissibleTerm(bound))
}

// translation length of an orientation-reversing hyperbolic: |t| = 2·sinh(ℓ/2)
fn glide_length<T: Int>(trace: &T) -> f64 {
    let t = trace.abs();
    match t.to_f64() {
        Some(x) if x < 1e150 => 2.0 * (x / 2.0).asinh(),
        _ => 2.0 * ln_abs(&t.to_big()),
    }
}

/// One emitted stage of the construction.
#[derive(Clone, PartialEq, Debug)]
pub struct LegendreStep<T: Int> {
    pub k: usize,
    /// The term `p_k` chosen at this step.
    pub term: T,
    pub gamma: IntMat2<T>,
    pub trace: T,
    /// Even index: determinant +1, a closed-geodesic candidate.
    pub singleton_candidate: bool,
    pub in_gamma0: bool,
    /// Translation length; for odd `k` (determinant −1) this is the glide
    /// length `2·asinh(|t|/2)`.
    pub axis_length: f64,
}

/// Lazily runs the construction; each item is the next step or the error
/// that stopped it, after which the iterator is exhausted.
#[derive(Clone, Debug)]
pub struct LegendreBuilder<T: Int> {
    terms: TermSequence<T>,
    pred: TracePredicate<T>,
    bound: u64,
    level: u64,
    halted: bool,
}

impl<T: Int> LegendreBuilder<T> {
    pub fn new(p0: T, pred: TracePredicate<T>, bound: u64, level: u64) -> Result<Self> {
        if level < 1 {
            return Err(Error::InvalidLevel(level.to_string()));
        }
        Ok(LegendreBuilder {
            terms: TermSequence::new(vec![p0])?,
            pred,
            bound,
            level,
            halted: false,
        })
    }

    pub fn terms(&self) -> &TermSequence<T> {
        &self.terms
    }
}

impl<T: Int> Iterator for LegendreBuilder<T> {
    type Item = Result<LegendreStep<T>>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.halted {
            return None;
        }
        match select_next_term(&self.terms, &self.pred, self.bound) {
            Ok(next) => {
                self.terms = next;
                let k = self.terms.len() - 1;
                let gamma = build_gamma(&self.terms, k).expect("k is in range");
                let trace = gamma.trace();
                let det_one = gamma.det().is_one();
                Some(Ok(LegendreStep {
                    k,
                    term: self.terms.terms()[k].clone(),
                    singleton_candidate: det_one,
                    in_gamma0: gamma.in_hecke(self.level),
                    axis_length: if det_one {
                        geodesic_length(&trace)
                    } else {
                        glide_length(&trace)
                    },
                    trace,
                    gamma,
                }))
            }
            Err(e) => {
                self.halted = true;
                Some(Err(e))
            }
        }
    }
}

/// A construction that stopped early, with the steps emitted before the stop.
#[derive(Clone, Debug)]
pub struct StreamHalted<T: Int> {
    pub steps: Vec<LegendreStep<T>>,
    pub error: Error,
}

impl<T: Int> fmt::Display for StreamHalted<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "stream halted after {} steps: {}",
            self.steps.len(),
            self.error
        )
    }
}

impl<T: Int> std::error::Error for StreamHalted<T> {}

/// Runs `steps` stages of the construction starting from `p₀`.
pub fn legendre_stream<T: Int>(
    p0: T,
    pred: TracePredicate<T>,
    steps: usize,
    bound: u64,
    level: u64,
) -> std::result::Result<Vec<LegendreStep<T>>, StreamHalted<T>> {
    let builder = LegendreBuilder::new(p0, pred, bound, level).map_err(|error| StreamHalted {
        steps: Vec::new(),
        error,
    })?;
    let mut out = Vec::with_capacity(steps);
    for step in builder.take(steps) {
        match step {
            Ok(s) => out.push(s),
            Err(error) => return Err(StreamHalted { steps: out, error }),
        }
    }
    Ok(out)
}
