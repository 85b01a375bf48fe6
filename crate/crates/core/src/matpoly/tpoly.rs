use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::ratfunc::RatFunc;
use crate::ring::{FieldElem, RingElem};

/// A polynomial in `t` with ring coefficients, stored in ascending powers
/// with no trailing zeros. The empty coefficient list is the zero polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TPoly<C> {
    coeffs: Vec<C>,
}

impl<C> TPoly<C>
where
    C: RingElem,
{
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(RingElem::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `t - c`.
    pub fn linear_monic(c: &C) -> Self {
        Self::new(vec![c.negated(), c.one_like()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Option<&C> {
        self.coeffs.get(i)
    }

    pub fn leading(&self) -> Option<&C> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(RingElem::is_one)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn map<D, F>(&self, f: F) -> TPoly<D>
    where
        D: RingElem,
        F: FnMut(&C) -> D,
    {
        TPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn try_map<D, F>(&self, f: F) -> Result<TPoly<D>>
    where
        D: RingElem,
        F: FnMut(&C) -> Result<D>,
    {
        Ok(TPoly::new(self.coeffs.iter().map(f).collect::<Result<_>>()?))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&C, &C) -> C) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = match self.coeffs.first().or(other.coeffs.first()) {
            Some(c) => c.zero_like(),
            None => return Self::zero(),
        };
        Self::new(
            (0..len)
                .map(|i| {
                    f(
                        self.coeffs.get(i).unwrap_or(&zero),
                        other.coeffs.get(i).unwrap_or(&zero),
                    )
                })
                .collect(),
        )
    }
}

impl<C> TPoly<C>
where
    C: FieldElem,
{
    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().unwrap().try_inv().expect("field element");
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&sd| sd >= dd) else {
            return (Self::zero(), self.clone());
        };
        let zero = lead_inv.zero_like();
        let mut quot = vec![zero; sd - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].times(&lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].minus(&c.times(b));
            }
            quot[i] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn make_monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.try_inv().expect("field element")),
            None => Self::zero(),
        }
    }

    /// Monic gcd (zero when both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.make_monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).1.is_zero()
    }
}

impl TPoly<LaurentPoly> {
    pub fn reduce_mod(&self, q: u64) -> Result<Self> {
        self.try_map(|c| c.reduce_mod(q))
    }

    pub fn to_fractions(&self) -> Result<TPoly<RatFunc>> {
        self.try_map(|c| RatFunc::from_poly(c.clone()))
    }
}

impl TPoly<RatFunc> {
    /// Converts to Laurent coefficients if every denominator is 1.
    pub fn to_laurent(&self) -> Option<TPoly<LaurentPoly>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.clone().into_laurent())
            .collect::<Option<Vec<_>>>()?;
        Some(TPoly::new(coeffs))
    }
}

impl<'a, C> Add<&'a TPoly<C>> for &'a TPoly<C>
where
    C: RingElem,
{
    type Output = TPoly<C>;
    fn add(self, rhs: &'a TPoly<C>) -> TPoly<C> {
        self.zip_with(rhs, C::plus)
    }
}

impl<'a, C> Sub<&'a TPoly<C>> for &'a TPoly<C>
where
    C: RingElem,
{
    type Output = TPoly<C>;
    fn sub(self, rhs: &'a TPoly<C>) -> TPoly<C> {
        self.zip_with(rhs, C::minus)
    }
}

impl<'a, C> Mul<&'a TPoly<C>> for &'a TPoly<C>
where
    C: RingElem,
{
    type Output = TPoly<C>;
    fn mul(self, rhs: &'a TPoly<C>) -> TPoly<C> {
        let (Some(a0), false) = (self.coeffs.first(), rhs.is_zero()) else {
            return TPoly::zero();
        };
        let mut out = vec![a0.zero_like(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        TPoly::new(out)
    }
}

impl<C> Neg for &TPoly<C>
where
    C: RingElem,
{
    type Output = TPoly<C>;
    fn neg(self) -> TPoly<C> {
        TPoly::new(self.coeffs.iter().map(C::negated).collect())
    }
}

/// Prints in descending powers, e.g. `t^2 + (X^-1 + X)`.
impl<C> fmt::Display for TPoly<C>
where
    C: RingElem + fmt::Display,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let power = match k {
                0 => String::new(),
                1 => "t".to_string(),
                k => format!("t^{k}"),
            };
            if k > 0 && c.is_one() {
                f.write_str(&power)?;
            } else {
                write!(f, "({c}){power}")?;
            }
        }
        Ok(())
    }
}

/// Serialized as the list of coefficients in ascending powers of `t`.
impl<C: fmt::Display> Serialize for TPoly<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(|c| c.to_string()))
    }
}
