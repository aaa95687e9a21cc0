//! The exact integer scalar the library is generic over.
//!
//! Everything that must be exact (continued-fraction terms, matrix entries,
//! surd coefficients) is written against [`Int`]. `BigInt` is the default
//! carrier; machine integers work as long as the values stay in range.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// Signed exact integer usable as a term, matrix entry or surd coefficient.
pub trait Int:
    Integer
    + Signed
    + Roots
    + Clone
    + Hash
    + Debug
    + Display
    + FromStr
    + FromPrimitive
    + ToPrimitive
    + Into<BigInt>
    + Send
    + Sync
    + 'static
{
    fn from_u32(v: u32) -> Self {
        <Self as FromPrimitive>::from_u32(v).expect("u32 fits every Int")
    }

    fn two() -> Self {
        Self::one() + Self::one()
    }

    /// Exact conversion into `BigInt`, for evaluations that need headroom.
    fn to_big(&self) -> BigInt {
        self.clone().into()
    }
}

impl<T> Int for T where
    T: Integer
        + Signed
        + Roots
        + Clone
        + Hash
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Into<BigInt>
        + Send
        + Sync
        + 'static
{
}

/// Floor square root of a nonnegative integer.
pub(crate) fn isqrt<T: Int>(n: &T) -> T {
    n.sqrt()
}

/// Returns `Some(root)` when `n` is a perfect square.
pub(crate) fn exact_sqrt<T: Int>(n: &T) -> Option<T> {
    if n.is_negative() {
        return None;
    }
    let s = isqrt(n);
    if s.clone() * s.clone() == *n {
        Some(s)
    } else {
        None
    }
}

/// Splits a positive `n` as `s² · k` with `k` square-free, by trial division.
pub(crate) fn square_free_split<T: Int>(n: &T) -> (T, T) {
    debug_assert!(n.is_positive());
    let mut rest = n.clone();
    let mut square = T::one();
    let mut kernel = T::one();
    let mut p = T::two();
    while p.clone() * p.clone() <= rest {
        let mut odd = false;
        while rest.is_multiple_of(&p) {
            rest = rest / p.clone();
            if odd {
                square = square * p.clone();
            }
            odd = !odd;
        }
        if odd {
            kernel = kernel * p.clone();
        }
        p = p + T::one();
    }
    // whatever is left is 1 or a prime
    (square, kernel * rest)
}

/// Natural log of `|n|` for integers too large for `f64`.
pub(crate) fn ln_abs(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::abs).unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (n.magnitude() >> shift).to_f64().unwrap_or(f64::MAX);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free_split_small() {
        for (n, s, k) in [
            (1i64, 1, 1),
            (2, 1, 2),
            (8, 2, 2),
            (12, 2, 3),
            (18, 3, 2),
            (72, 6, 2),
            (49, 7, 1),
            (30, 1, 30),
        ] {
            assert_eq!(square_free_split(&n), (s, k), "n = {n}");
        }
    }

    #[test]
    fn square_free_split_reconstructs() {
        for n in 1i64..2000 {
            let (s, k) = square_free_split(&n);
            assert_eq!(s * s * k, n);
            for p in 2..=k {
                assert!(k % (p * p) != 0, "{k} not square-free");
            }
        }
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(exact_sqrt(&BigInt::from(145)), None);
        assert_eq!(exact_sqrt(&0i64), Some(0));
        assert_eq!(exact_sqrt(&-4i64), None);
    }

    #[test]
    fn ln_abs_matches_f64_and_huge() {
        assert!((ln_abs(&BigInt::from(1000)) - 1000f64.ln()).abs() < 1e-12);
        let huge = BigInt::from(3) << 5000usize;
        let expected = 3f64.ln() + 5000.0 * std::f64::consts::LN_2;
        assert!((ln_abs(&huge) - expected).abs() < 1e-9);
    }
}
