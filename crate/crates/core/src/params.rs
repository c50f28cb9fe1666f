use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fq::{is_prime, pow_mod};

/// Which standing assumptions a parameter triple must satisfy.
///
/// The default policy enforces everything (`g >= 2`, `gcd(p, q-1) = 1`).
/// Oracle runs on tiny instances relax one or both.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Policy {
    pub allow_genus_one: bool,
    pub allow_non_coprime: bool,
}

impl Policy {
    pub const STRICT: Policy = Policy { allow_genus_one: false, allow_non_coprime: false };
    pub const ORACLE: Policy = Policy { allow_genus_one: true, allow_non_coprime: false };
    pub const RELAXED: Policy = Policy { allow_genus_one: true, allow_non_coprime: true };
}

/// The triple `(p, q, r)` describing a cyclic p-gonal curve with `r` fixed
/// points and the prime `q` of its homology cover.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverParams {
    p: u32,
    q: u32,
    r: u32,
    s0: u32,
    coprime: bool,
}

impl fmt::Display for CoverParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(p={}, q={}, r={})", self.p, self.q, self.r)
    }
}

/// Least `s >= 1` with `q^s = 1 mod p`.
pub fn order_mod(q: u32, p: u32) -> Result<u32> {
    if p < 2 || q.is_multiple_of(p) {
        return Err(Error::InvalidParameters(format!("q={q} is not a unit modulo p={p}")));
    }
    let mut acc = q % p;
    let mut s = 1;
    while acc != 1 {
        acc = (acc as u64 * q as u64 % p as u64) as u32;
        s += 1;
    }
    Ok(s)
}

impl CoverParams {
    pub fn new(p: u32, q: u32, r: u32) -> Result<Self> {
        Self::with_policy(p, q, r, Policy::STRICT)
    }

    /// Like [`CoverParams::new`] but also admits genus one (`p = 3, r = 3`).
    pub fn oracle(p: u32, q: u32, r: u32) -> Result<Self> {
        Self::with_policy(p, q, r, Policy::ORACLE)
    }

    pub fn with_policy(p: u32, q: u32, r: u32, policy: Policy) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidParameters(msg));
        if p < 3 || !is_prime(p) {
            return bad(format!("p={p} must be an odd prime"));
        }
        if !is_prime(q) {
            return bad(format!("q={q} must be prime"));
        }
        if p == q {
            return bad(format!("p and q must differ (both {p})"));
        }
        if r < 3 {
            return bad(format!("r={r} must be at least 3"));
        }
        let coprime = (q - 1).gcd(&p) == 1;
        if !coprime && !policy.allow_non_coprime {
            return bad(format!("gcd(p, q-1) must be 1 (p={p}, q={q})"));
        }
        let g2 = (p - 1) * (r - 2);
        if g2 < 4 && !policy.allow_genus_one {
            return bad(format!("genus {} < 2 for p={p}, r={r}", g2 / 2));
        }
        if (g2 as u64) > 4096 {
            return bad(format!("homology rank {g2} is out of range"));
        }
        let s0 = order_mod(q, p)?;
        let params = Self { p, q, r, s0, coprime };
        if coprime && !(params.m() % BigUint::from(p)).is_zero() {
            return bad(format!("p={p} does not divide m"));
        }
        Ok(params)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Genus of the base curve, `(p-1)(r-2)/2`.
    pub fn g(&self) -> u32 {
        (self.p - 1) * (self.r - 2) / 2
    }

    /// Rank of the homology group, `n = 2g = (p-1)(r-2)`.
    pub fn n(&self) -> usize {
        ((self.p - 1) * (self.r - 2)) as usize
    }

    /// Number of gonal blocks, `r - 2`.
    pub fn blocks(&self) -> usize {
        (self.r - 2) as usize
    }

    pub fn s0(&self) -> u32 {
        self.s0
    }

    pub fn is_coprime(&self) -> bool {
        self.coprime
    }

    /// `q^n`, the order of the homology group.
    pub fn group_order(&self) -> BigUint {
        BigUint::from(self.q).pow(self.n() as u32)
    }

    /// Number of maximal subgroups, `(q^n - 1)/(q - 1)`.
    pub fn m(&self) -> BigUint {
        (self.group_order() - 1u32) / BigUint::from(self.q - 1)
    }

    /// Number of orbit classes `m / p`; `None` when `p` does not divide `m`.
    pub fn t(&self) -> Option<BigUint> {
        let (t, rem) = self.m().div_rem(&BigUint::from(self.p));
        rem.is_zero().then_some(t)
    }

    /// `q^s = 1 mod p`.
    pub fn is_invariant_dim(&self, s: usize) -> bool {
        pow_mod(self.q, s as u64, self.p) == 1
    }

    /// `q^n` as a machine integer when it fits.
    pub fn ambient_size(&self) -> Option<u128> {
        (self.q as u128).checked_pow(self.n() as u32)
    }
}

pub(crate) fn big_pow(base: u32, exp: usize) -> BigUint {
    if exp == 0 {
        return BigUint::one();
    }
    BigUint::from(base).pow(exp as u32)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_mod_examples() {
        assert_eq!(order_mod(3, 13).unwrap(), 3);
        assert_eq!(order_mod(2, 3).unwrap(), 2);
        assert_eq!(order_mod(2, 5).unwrap(), 4);
        assert!(order_mod(13, 13).is_err());
        for p in [3u32, 5, 7, 11, 13, 17] {
            for q in [2u32, 3, 5, 7, 11] {
                if p != q {
                    assert_eq!((p - 1) % order_mod(q, p).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn derived_quantities() {
        let c = CoverParams::new(13, 3, 3).unwrap();
        assert_eq!(c.g(), 6);
        assert_eq!(c.n(), 12);
        assert_eq!(c.s0(), 3);
        assert_eq!(c.m(), BigUint::from(265_720u32));
        assert_eq!(c.t(), Some(BigUint::from(20_440u32)));
        let c = CoverParams::new(5, 2, 3).unwrap();
        assert_eq!(c.t(), Some(BigUint::from(3u32)));
    }

    #[test]
    fn validation() {
        assert!(CoverParams::new(4, 2, 3).is_err());
        assert!(CoverParams::new(3, 3, 4).is_err());
        assert!(CoverParams::new(3, 4, 4).is_err());
        assert!(CoverParams::new(3, 2, 2).is_err());
        // genus one only through the oracle policy
        assert!(CoverParams::new(3, 2, 3).is_err());
        assert_eq!(CoverParams::oracle(3, 2, 3).unwrap().g(), 1);
        // gcd(3, 7-1) = 3
        assert!(CoverParams::new(3, 7, 4).is_err());
        let relaxed = CoverParams::with_policy(3, 7, 4, Policy::RELAXED).unwrap();
        assert!(!relaxed.is_coprime());
    }
}
