//! Exact quadratic irrationals `(p + q·√D) / r`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Float, NumCast, One};

use crate::error::{Error, Result};
use crate::scalar::{exact_sqrt, isqrt, square_free_split, Int};

/// A real quadratic irrational `(p + q·√D) / r`.
///
/// Always normalized: `D ≥ 2` square-free, `q ≠ 0`, `r > 0` and
/// `gcd(p, q, r) = 1`. Two surds are equal as numbers iff they are equal
/// as structs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QuadSurd<T> {
    p: T,
    q: T,
    r: T,
    d: T,
}

impl<T: Int> QuadSurd<T> {
    /// Builds `(p + q·√radicand) / r`, pulling square factors out of the
    /// radicand. Fails with `NotIrrational` when the value is rational.
    pub fn new(p: T, q: T, r: T, radicand: T) -> Result<Self> {
        if r.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if !radicand.is_positive() {
            return Err(Error::NegativeInput(radicand.to_string()));
        }
        let (s, d) = square_free_split(&radicand);
        let q = q * s;
        if q.is_zero() || d.is_one() {
            return Err(Error::NotIrrational);
        }
        Ok(Self::normalized(p, q, r, d))
    }

    /// `√n` for a positive non-square `n`.
    pub fn sqrt(n: T) -> Result<Self> {
        Self::new(T::zero(), T::one(), T::one(), n)
    }

    // d must already be square-free and q, r nonzero
    fn normalized(p: T, q: T, r: T, d: T) -> Self {
        let g = p.gcd(&q).gcd(&r);
        let (mut p, mut q, mut r) = (p / g.clone(), q / g.clone(), r / g);
        if r.is_negative() {
            p = -p;
            q = -q;
            r = -r;
        }
        QuadSurd { p, q, r, d }
    }

    pub fn p(&self) -> &T {
        &self.p
    }

    pub fn q(&self) -> &T {
        &self.q
    }

    pub fn r(&self) -> &T {
        &self.r
    }

    /// The square-free radicand `D`.
    pub fn radicand(&self) -> &T {
        &self.d
    }

    /// The Galois conjugate `(p − q·√D) / r`.
    pub fn conjugate(&self) -> Self {
        QuadSurd {
            p: self.p.clone(),
            q: -self.q.clone(),
            r: self.r.clone(),
            d: self.d.clone(),
        }
    }

    /// Sign of the value: never zero.
    pub fn signum(&self) -> Ordering {
        // r > 0, so only the numerator p + q√D matters
        let (p, q) = (&self.p, &self.q);
        match (p.is_negative(), q.is_negative()) {
            (false, false) => Ordering::Greater,
            (true, true) => Ordering::Less,
            _ => {
                let p2 = p.clone() * p.clone();
                let q2d = q.clone() * q.clone() * self.d.clone();
                // p ≥ 0 > q: positive iff p² > q²D
                if q.is_negative() {
                    p2.cmp(&q2d)
                } else {
                    q2d.cmp(&p2)
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// `⌊(p + q√D) / r⌋`, exact.
    pub fn floor(&self) -> T {
        let q2d = self.q.clone() * self.q.clone() * self.d.clone();
        let root = isqrt(&q2d);
        // q√D is irrational, so its floor is root or -(root + 1)
        let floor_qd = if self.q.is_positive() {
            root
        } else {
            -(root + T::one())
        };
        (self.p.clone() + floor_qd).div_floor(&self.r)
    }

    /// Image under `x ↦ (a·x + b) / (c·x + d)`; the determinant must be
    /// nonzero, which keeps the image irrational.
    pub fn mobius(&self, a: &T, b: &T, c: &T, d: &T) -> Result<Self> {
        let det = a.clone() * d.clone() - b.clone() * c.clone();
        if det.is_zero() {
            return Err(Error::NotUnimodular(det.to_string()));
        }
        let (p, q, r, rad) = (&self.p, &self.q, &self.r, &self.d);
        // numerator n1 + n2√D and denominator m1 + m2√D, both over r
        let n1 = a.clone() * p.clone() + b.clone() * r.clone();
        let n2 = a.clone() * q.clone();
        let m1 = c.clone() * p.clone() + d.clone() * r.clone();
        let m2 = c.clone() * q.clone();
        let new_p = n1.clone() * m1.clone() - n2.clone() * m2.clone() * rad.clone();
        let new_q = n2 * m1.clone() - n1 * m2.clone();
        let new_r = m1.clone() * m1 - m2.clone() * m2 * rad.clone();
        debug_assert!(!new_q.is_zero() && !new_r.is_zero());
        Ok(Self::normalized(new_p, new_q, new_r, rad.clone()))
    }

    /// `1 / (x − a)`, the complete-quotient step of the continued fraction.
    pub fn shift_invert(&self, a: &T) -> Self {
        self.mobius(&T::zero(), &T::one(), &T::one(), &-a.clone())
            .expect("determinant is -1")
    }

    /// Floating-point approximation.
    pub fn to_float<F: Float>(&self) -> F {
        let f = |v: &T| -> F { <F as NumCast>::from(v.clone()).unwrap_or_else(F::nan) };
        (f(&self.p) + f(&self.q) * f(&self.d).sqrt()) / f(&self.r)
    }

    pub fn to_f64(&self) -> f64 {
        self.to_float::<f64>()
    }

    /// Rational approximation with `√D` truncated to `bits` fractional bits.
    pub fn approx_rational(&self, bits: u32) -> BigRational {
        let scale = BigInt::one() << bits;
        let root = isqrt(&(self.d.to_big() * &scale * &scale));
        let num = self.p.to_big() * &scale + self.q.to_big() * root;
        BigRational::new(num, self.r.to_big() * scale)
    }
}

impl<T: Int> fmt::Display for QuadSurd<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}*sqrt({}))/{}", self.p, self.q, self.d, self.r)
    }
}

/// A real root of an integer quadratic: rational or a genuine surd.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Root<T: Int> {
    Rational(Ratio<T>),
    Surd(QuadSurd<T>),
}

impl<T: Int> Root<T> {
    pub fn to_f64(&self) -> f64 {
        match self {
            Root::Rational(x) => {
                <f64 as NumCast>::from(x.numer().clone()).unwrap_or(f64::NAN)
                    / <f64 as NumCast>::from(x.denom().clone()).unwrap_or(f64::NAN)
            }
            Root::Surd(s) => s.to_f64(),
        }
    }
}

/// Real roots of `a·x² + b·x + c` (with `a ≠ 0`) in increasing order.
pub fn real_roots<T: Int>(a: &T, b: &T, c: &T) -> Vec<Root<T>> {
    assert!(!a.is_zero(), "leading coefficient must be nonzero");
    // a primitive polynomial keeps the discriminant, and its factoring, small
    let g = a.gcd(b).gcd(c);
    let (a, b, c) = (
        &(a.clone() / g.clone()),
        &(b.clone() / g.clone()),
        &(c.clone() / g),
    );
    let four = T::two() * T::two();
    let disc = b.clone() * b.clone() - four * a.clone() * c.clone();
    if disc.is_negative() {
        return Vec::new();
    }
    let two_a = T::two() * a.clone();
    let mut roots = match exact_sqrt(&disc) {
        Some(s) if s.is_zero() => vec![Root::Rational(Ratio::new(-b.clone(), two_a))],
        Some(s) => vec![
            Root::Rational(Ratio::new(-b.clone() - s.clone(), two_a.clone())),
            Root::Rational(Ratio::new(-b.clone() + s, two_a)),
        ],
        None => vec![
            Root::Surd(
                QuadSurd::new(-b.clone(), -T::one(), two_a.clone(), disc.clone())
                    .expect("non-square"),
            ),
            Root::Surd(QuadSurd::new(-b.clone(), T::one(), two_a, disc).expect("non-square")),
        ],
    };
    if a.is_negative() {
        roots.reverse();
    }
    roots
}
