//! Arithmetic invariants of the modular curve `X₀(N)`.
//!
//! Index `μ = N·∏(1 + 1/p)`, cusps `ν∞ = Σ_{d|N} φ(gcd(d, N/d))`, elliptic
//! points `ν₂ = ∏(1 + (−4|p))` (zero if `4 | N`) and `ν₃ = ∏(1 + (−3|p))`
//! (zero if `9 | N`), and genus from `12(g − 1) + 3ν₂ + 4ν₃ + 6ν∞ = μ`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on `N` for [`index_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    pub level: u64,
    pub index: u64,
    pub cusps: u64,
    pub elliptic2: u64,
    pub elliptic3: u64,
    pub genus: u64,
}

impl SurfaceInvariants {
    /// `12(g − 1) + 3ν₂ + 4ν₃ + 6ν∞ − μ`, zero for a consistent record.
    pub fn genus_identity_defect(&self) -> i128 {
        12 * (self.genus as i128 - 1)
            + 3 * self.elliptic2 as i128
            + 4 * self.elliptic3 as i128
            + 6 * self.cusps as i128
            - self.index as i128
    }
}

/// Prime factorization by trial division, as `(p, e)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// (−4 | p): the character of ℚ(i)
fn chi_minus4(p: u64) -> i64 {
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

// (−3 | p): the character of ℚ(√−3); p = 2 is inert
fn chi_minus3(p: u64) -> i64 {
    match p % 3 {
        1 => 1,
        2 => -1,
        _ => 0,
    }
}

pub fn surface_invariants(level: u64) -> Result<SurfaceInvariants> {
    if level < 1 {
        return Err(Error::InvalidLevel(level.to_string()));
    }
    let primes = factorize(level);
    let index = primes.iter().fold(level, |acc, &(p, _)| acc / p * (p + 1));
    let cusps = (1..=level)
        .filter(|d| level.is_multiple_of(*d))
        .map(|d| euler_phi(gcd(d, level / d)))
        .sum();
    let elliptic = |chi: fn(u64) -> i64, blocked: u64| -> u64 {
        if level.is_multiple_of(blocked) {
            return 0;
        }
        primes.iter().map(|&(p, _)| (1 + chi(p)) as u64).product()
    };
    let elliptic2 = elliptic(chi_minus4, 4);
    let elliptic3 = elliptic(chi_minus3, 9);
    let twelve_g =
        12 + index as i128 - 3 * elliptic2 as i128 - 4 * elliptic3 as i128 - 6 * cusps as i128;
    assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "genus formula is not integral at N = {level}"
    );
    Ok(SurfaceInvariants {
        level,
        index,
        cusps,
        elliptic2,
        elliptic3,
        genus: (twelve_g / 12) as u64,
    })
}

pub fn genus(level: u64) -> Result<u64> {
    surface_invariants(level).map(|s| s.genus)
}

/// `|ℙ¹(ℤ/N)|` by walking every pair `(c, d)` with `gcd(c, d, N) = 1` and
/// marking its orbit under unit scaling.
pub fn index_bruteforce(level: u64) -> Result<u64> {
    if level < 1 {
        return Err(Error::InvalidLevel(level.to_string()));
    }
    if level > BRUTEFORCE_LIMIT {
        return Err(Error::LevelTooLarge(level));
    }
    let n = level as usize;
    let units: Vec<usize> = (1..=n)
        .filter(|&u| gcd(u as u64, level) == 1)
        .map(|u| u % n)
        .collect();
    let mut seen = vec![0u64; (n * n).div_ceil(64)];
    let mut orbits = 0;
    for c in 0..n {
        for d in 0..n {
            if gcd(gcd(c as u64, d as u64), level) != 1 {
                continue;
            }
            let idx = c * n + d;
            if seen[idx / 64] >> (idx % 64) & 1 == 1 {
                continue;
            }
            orbits += 1;
            for &u in &units {
                let j = (u * c % n) * n + u * d % n;
                seen[j / 64] |= 1 << (j % 64);
            }
        }
    }
    Ok(orbits)
}
