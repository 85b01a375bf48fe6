//! The field of fractions `F_p(X)` of the Laurent polynomial ring over a prime
//! field.
//!
//! Units of the Laurent ring are `c X^k`, so every fraction has a unique
//! representative whose denominator is an ordinary monic polynomial with a
//! nonzero constant term, coprime to the numerator.

mod upoly;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modarith::Modulus;
use crate::ring::{FieldElem, RingElem};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    /// Canonical form of `num / den`. The modulus must be prime.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        num.modulus().check_same(den.modulus())?;
        if !num.modulus().is_prime() {
            return Err(Error::CompositeModulus(num.modulus().get()));
        }
        Self::normalize(num, den)
    }

    pub fn from_poly(num: LaurentPoly) -> Result<Self> {
        let one = LaurentPoly::one(num.modulus());
        Self::new(num, one)
    }

    pub(crate) fn from_poly_unchecked(num: LaurentPoly) -> Self {
        let den = LaurentPoly::one(num.modulus());
        RatFunc { num, den }
    }

    fn normalize(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = num.modulus();
        if num.is_zero() {
            return Ok(RatFunc {
                num,
                den: LaurentPoly::one(p),
            });
        }
        // den = X^s * d(X), d(0) != 0; fold the unit c X^s into the numerator
        let (s, d) = upoly::from_laurent(&den);
        let lead = *d.last().unwrap();
        let lead_inv = p.inv(lead).ok_or(Error::CompositeModulus(p.get()))?;
        let d = upoly::scale(&d, lead_inv, p);
        let num = num.shift(-s).scalar_mul(lead_inv as i64);

        let (t, n) = upoly::from_laurent(&num);
        let g = upoly::gcd(&n, &d, p);
        let (n, d) = if g.len() > 1 {
            (upoly::div_exact(&n, &g, p), upoly::div_exact(&d, &g, p))
        } else {
            (n, d)
        };
        Ok(RatFunc {
            num: upoly::to_laurent(&n, t, p),
            den: upoly::to_laurent(&d, 0, p),
        })
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn modulus(&self) -> Modulus {
        self.num.modulus()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is 1, i.e. the value lies in the Laurent ring.
    pub fn is_laurent(&self) -> bool {
        self.den == LaurentPoly::one(self.modulus())
    }

    pub fn into_laurent(self) -> Option<LaurentPoly> {
        self.is_laurent().then_some(self.num)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let n = &(&self.num * &other.den) + &(&other.num * &self.den);
        Self::normalize(n, &self.den * &other.den)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.modulus().check_same(other.modulus())?;
        Self::normalize(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::normalize(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    /// `deg+(num) - deg+(den)`; undefined for zero.
    pub fn deg_plus(&self) -> Result<i64> {
        let (n, d) = (self.num.deg_plus(), self.den.deg_plus());
        match (n.finite(), d.finite()) {
            (Some(n), Some(d)) => Ok(n - d),
            _ => Err(Error::ZeroFractionDegree),
        }
    }

    /// `deg-(num) - deg-(den)`; undefined for zero.
    pub fn deg_minus(&self) -> Result<i64> {
        let (n, d) = (self.num.deg_minus(), self.den.deg_minus());
        match (n.finite(), d.finite()) {
            (Some(n), Some(d)) => Ok(n - d),
            _ => Err(Error::ZeroFractionDegree),
        }
    }
}

/// Least common multiple of two canonical denominators (monic ordinary
/// polynomials with nonzero constant term).
pub(crate) fn lcm_den(a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
    let p = a.modulus();
    let (_, da) = upoly::from_laurent(a);
    let (_, db) = upoly::from_laurent(b);
    let g = upoly::gcd(&da, &db, p);
    let cofactor = upoly::to_laurent(&upoly::div_exact(&db, &g, p), 0, p);
    a * &cofactor
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_laurent() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_add(rhs).expect("fraction addition")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_sub(rhs).expect("fraction subtraction")
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &'a RatFunc) -> RatFunc {
        self.checked_mul(rhs).expect("fraction multiplication")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl RingElem for RatFunc {
    fn zero_like(&self) -> Self {
        Self::from_poly_unchecked(LaurentPoly::zero(self.modulus()))
    }
    fn one_like(&self) -> Self {
        Self::from_poly_unchecked(LaurentPoly::one(self.modulus()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negated(&self) -> Self {
        -self
    }
}

impl FieldElem for RatFunc {
    fn try_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}
