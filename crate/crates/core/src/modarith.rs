//! Residue arithmetic in `Z/mZ` and prime factorization of moduli.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A modulus `m >= 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidModulus(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, v: u64) -> u64 {
        v % self.0
    }

    /// Reduces a signed integer into `[0, m)`.
    #[inline]
    pub fn reduce_signed(self, v: i64) -> u64 {
        v.rem_euclid(self.0 as i64) as u64
    }

    #[inline]
    pub fn add(self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn sub(self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.0 - (b - a)
        }
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    #[inline]
    pub fn neg(self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    /// Multiplicative inverse of `a`, if it is a unit.
    pub fn inv(self, a: u64) -> Option<u64> {
        let (g, x) = ext_gcd(a as i128 % self.0 as i128, self.0 as i128);
        (g == 1).then(|| x.rem_euclid(self.0 as i128) as u64)
    }

    pub fn is_prime(self) -> bool {
        is_prime(self.0)
    }

    pub fn check_same(self, other: Modulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.0,
                right: other.0,
            })
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

// returns (g, x) with a*x = g (mod b)
fn ext_gcd(a: i128, b: i128) -> (i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 < 0 {
        (-r0, -s0)
    } else {
        (r0, s0)
    }
}

/// An element of `Z/mZ` in canonical form `0 <= value < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u64,
    modulus: Modulus,
}

// checked arithmetic: operands may carry different moduli
#[allow(clippy::should_implement_trait)]
impl Residue {
    pub fn new(value: i64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce_signed(value),
            modulus,
        }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn add(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with(self.modulus.add(self.value, other.value)))
    }

    pub fn sub(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with(self.modulus.sub(self.value, other.value)))
    }

    pub fn mul(self, other: Residue) -> Result<Residue> {
        self.modulus.check_same(other.modulus)?;
        Ok(self.with(self.modulus.mul(self.value, other.value)))
    }

    pub fn neg(self) -> Residue {
        self.with(self.modulus.neg(self.value))
    }

    fn with(self, value: u64) -> Residue {
        Residue {
            value,
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// A prime power `p^k` with `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

impl PrimePower {
    pub fn value(self) -> u64 {
        self.p.pow(self.k)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors `m` into prime powers with strictly increasing primes.
pub fn factor(m: u64) -> Result<Vec<PrimePower>> {
    if m < 2 {
        return Err(Error::InvalidModulus(m));
    }
    let mut out = Vec::new();
    let mut rest = m;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            out.push(PrimePower { p, k });
        }
        p += 1;
    }
    if rest > 1 {
        out.push(PrimePower { p: rest, k: 1 });
    }
    Ok(out)
}

/// Exponent of `p` in `n` (`n > 0`).
pub fn valuation(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p >= 2);
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower { p, k }
    }

    #[test]
    fn factor_examples() {
        assert_eq!(factor(6).unwrap(), vec![pp(2, 1), pp(3, 1)]);
        assert_eq!(factor(12).unwrap(), vec![pp(2, 2), pp(3, 1)]);
        assert_eq!(factor(2).unwrap(), vec![pp(2, 1)]);
        assert_eq!(factor(1), Err(Error::InvalidModulus(1)));
        assert_eq!(factor(0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn factor_reconstructs_every_modulus_up_to_10k() {
        for m in 2..=10_000u64 {
            let f = factor(m).unwrap();
            assert_eq!(f.iter().map(|q| q.value()).product::<u64>(), m);
            assert!(f.windows(2).all(|w| w[0].p < w[1].p));
            assert!(f.iter().all(|q| q.k >= 1 && is_prime(q.p)));
        }
    }

    #[test]
    fn residue_examples() {
        let m6 = Modulus::new(6).unwrap();
        let m7 = Modulus::new(7).unwrap();
        assert_eq!(Residue::new(3, m6).add(Residue::new(5, m6)).unwrap().value(), 2);
        assert_eq!(Residue::new(2, m6).mul(Residue::new(3, m6)).unwrap().value(), 0);
        assert_eq!(Residue::new(0, m7).neg().value(), 0);
        assert_eq!(Residue::new(-1, m7).value(), 6);
        assert!(matches!(
            Residue::new(1, m6).add(Residue::new(1, m7)),
            Err(Error::ModulusMismatch { left: 6, right: 7 })
        ));
    }

    #[test]
    fn inverse_only_for_units() {
        let m = Modulus::new(12).unwrap();
        assert_eq!(m.inv(5), Some(5));
        assert_eq!(m.inv(6), None);
        assert_eq!(Modulus::new(7).unwrap().inv(3), Some(5));
    }

    proptest! {
        #[test]
        fn ring_axioms(m in 2u64..200, a in 0i64..1000, b in 0i64..1000, c in 0i64..1000) {
            let m = Modulus::new(m).unwrap();
            let (a, b, c) = (Residue::new(a, m), Residue::new(b, m), Residue::new(c, m));
            prop_assert_eq!(a.add(b)?.add(c)?, a.add(b.add(c)?)?);
            prop_assert_eq!(a.mul(b.add(c)?)?, a.mul(b)?.add(a.mul(c)?)?);
            prop_assert_eq!(a.add(a.neg())?.value(), 0);
            prop_assert_eq!(a.sub(b)?, a.add(b.neg())?);
            prop_assert!(a.mul(b)?.value() < m.get());
        }
    }
}
