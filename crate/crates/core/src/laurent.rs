//! Laurent polynomials over `Z/mZ` with positive and negative degrees.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::modarith::Modulus;
use crate::ring::RingElem;

/// A degree extended with `-inf` and `+inf`. Variant order gives
/// `-inf < n < +inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtDegree {
    NegInf,
    Finite(i64),
    PosInf,
}

impl ExtDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            ExtDegree::Finite(d) => Some(d),
            _ => None,
        }
    }

    /// Sum of degrees; `-inf + +inf` is rejected.
    pub fn checked_add(self, other: ExtDegree) -> Result<ExtDegree> {
        use ExtDegree::*;
        match (self, other) {
            (NegInf, PosInf) | (PosInf, NegInf) => Err(Error::UndefinedDegreeSum),
            (NegInf, _) | (_, NegInf) => Ok(NegInf),
            (PosInf, _) | (_, PosInf) => Ok(PosInf),
            (Finite(a), Finite(b)) => Ok(Finite(a + b)),
        }
    }
}

impl fmt::Display for ExtDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtDegree::NegInf => f.write_str("-inf"),
            ExtDegree::Finite(d) => write!(f, "{d}"),
            ExtDegree::PosInf => f.write_str("+inf"),
        }
    }
}

impl Serialize for ExtDegree {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtDegree::Finite(d) => s.serialize_i64(*d),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

/// A Laurent polynomial `sum_d c_d X^d` over `Z/mZ`, stored sparsely with no
/// zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    modulus: Modulus,
    coeffs: BTreeMap<i64, u64>,
}

impl LaurentPoly {
    pub fn zero(modulus: Modulus) -> Self {
        LaurentPoly {
            modulus,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(modulus: Modulus) -> Self {
        Self::monomial(1, 0, modulus)
    }

    /// The constant `c` (reduced mod `m`).
    pub fn constant(c: i64, modulus: Modulus) -> Self {
        Self::monomial(c, 0, modulus)
    }

    /// `c X^d`.
    pub fn monomial(c: i64, d: i64, modulus: Modulus) -> Self {
        let mut p = Self::zero(modulus);
        let c = modulus.reduce_signed(c);
        if c != 0 {
            p.coeffs.insert(d, c);
        }
        p
    }

    /// Builds a polynomial from `(degree, coefficient)` pairs; repeated
    /// degrees are summed.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I, modulus: Modulus) -> Self {
        let mut p = Self::zero(modulus);
        for (d, c) in terms {
            p.add_term(d, modulus.reduce_signed(c));
        }
        p
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, d: i64) -> u64 {
        self.coeffs.get(&d).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing degree order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Largest degree in the support; `-inf` for zero.
    pub fn deg_plus(&self) -> ExtDegree {
        self.coeffs
            .last_key_value()
            .map_or(ExtDegree::NegInf, |(&d, _)| ExtDegree::Finite(d))
    }

    /// Smallest degree in the support; `+inf` for zero.
    pub fn deg_minus(&self) -> ExtDegree {
        self.coeffs
            .first_key_value()
            .map_or(ExtDegree::PosInf, |(&d, _)| ExtDegree::Finite(d))
    }

    pub(crate) fn add_term(&mut self, d: i64, c: u64) {
        if c == 0 {
            return;
        }
        let m = self.modulus;
        let entry = self.coeffs.entry(d).or_insert(0);
        *entry = m.add(*entry, c);
        if *entry == 0 {
            self.coeffs.remove(&d);
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, self.modulus.neg(c));
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        let m = self.modulus;
        let mut out = Self::zero(m);
        for (da, ca) in self.terms() {
            for (db, cb) in other.terms() {
                out.add_term(da + db, m.mul(ca, cb));
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: i64) -> Self {
        let m = self.modulus;
        let c = m.reduce_signed(c);
        let mut out = Self::zero(m);
        for (d, a) in self.terms() {
            out.add_term(d, m.mul(a, c));
        }
        out
    }

    /// Multiplies by `X^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|(&d, &c)| (d + k, c)).collect(),
        }
    }

    /// Substitutes `X -> X^-1`.
    pub fn reflect(&self) -> Self {
        LaurentPoly {
            modulus: self.modulus,
            coeffs: self.coeffs.iter().map(|(&d, &c)| (-d, c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.modulus);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Reduces every coefficient modulo `q`, dropping those that vanish.
    pub fn reduce_mod(&self, q: u64) -> Result<Self> {
        let q = Modulus::new(q)?;
        let mut out = Self::zero(q);
        for (d, c) in self.terms() {
            out.add_term(d, q.reduce(c));
        }
        Ok(out)
    }

    /// Parses the textual form, e.g. `"X^-3 + X^-2"`, `"2X + 3"`, `"0"`.
    ///
    /// Grammar: `poly := term (('+'|'-') term)*`,
    /// `term := coeff | coeff? 'X' ('^' int)?`. Whitespace is ignored and
    /// repeated degrees are summed.
    pub fn parse(s: &str, modulus: Modulus) -> Result<Self> {
        Parser::new(s, modulus).parse()
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms in increasing degree, e.g. `X^-1 + 1 + 2X`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("X")?,
                (1, c) => write!(f, "{c}X")?,
                (d, 1) => write!(f, "X^{d}")?,
                (d, c) => write!(f, "{c}X^{d}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PartialOrd for LaurentPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LaurentPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.modulus
            .cmp(&other.modulus)
            .then_with(|| self.coeffs.iter().cmp(other.coeffs.iter()))
    }
}

// Operator forms panic on a modulus mismatch; use the `checked_*` methods to
// handle it as an error.
impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("Laurent polynomial addition")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs).expect("Laurent polynomial subtraction")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("Laurent polynomial multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scalar_mul(-1)
    }
}

impl RingElem for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero(self.modulus)
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one(self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
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

struct Parser<'s> {
    chars: Vec<(usize, char)>,
    pos: usize,
    modulus: Modulus,
    _src: &'s str,
}

impl<'s> Parser<'s> {
    fn new(src: &'s str, modulus: Modulus) -> Self {
        // columns are 1-based character positions in the original string
        let chars = src
            .chars()
            .enumerate()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (i + 1, c))
            .collect();
        Parser {
            chars,
            pos: 0,
            modulus,
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or_else(|| self.chars.last().map_or(1, |&(i, _)| i + 1))
    }

    fn parse(mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero(self.modulus);
        if self.chars.is_empty() {
            return Err(Error::parse_at(1, "empty polynomial"));
        }
        let mut negate = false;
        if self.peek() == Some('-') {
            negate = true;
            self.pos += 1;
        }
        loop {
            let (d, c) = self.term()?;
            let c = if negate { self.modulus.neg(c) } else { c };
            out.add_term(d, c);
            match self.peek() {
                None => return Ok(out),
                Some('+') => negate = false,
                Some('-') => negate = true,
                Some(ch) => {
                    return Err(Error::parse_at(
                        self.column(),
                        format!("expected '+' or '-', found '{ch}'"),
                    ))
                }
            }
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Option<Result<u64>> {
        let start = self.pos;
        let col = self.column();
        let mut value: u64 = 0;
        while let Some(ch) = self.peek().filter(char::is_ascii_digit) {
            let digit = ch.to_digit(10).unwrap() as u64;
            value = match value.checked_mul(10).and_then(|v| v.checked_add(digit)) {
                Some(v) => v,
                None => return Some(Err(Error::parse_at(col, "integer literal too large"))),
            };
            self.pos += 1;
        }
        (self.pos > start).then_some(Ok(value))
    }

    fn term(&mut self) -> Result<(i64, u64)> {
        let col = self.column();
        let coeff = self.digits().transpose()?;
        if self.peek() == Some('*') && coeff.is_some() {
            self.pos += 1;
        }
        if !matches!(self.peek(), Some('X') | Some('x')) {
            return match coeff {
                Some(c) => Ok((0, self.modulus.reduce(c))),
                None => Err(Error::parse_at(col, "expected a coefficient or 'X'")),
            };
        }
        self.pos += 1;
        let mut degree = 1i64;
        if self.peek() == Some('^') {
            self.pos += 1;
            let neg = self.peek() == Some('-');
            if neg {
                self.pos += 1;
            }
            let col = self.column();
            let e = self
                .digits()
                .transpose()?
                .ok_or_else(|| Error::parse_at(col, "expected an exponent"))?;
            let e = i64::try_from(e).map_err(|_| Error::parse_at(col, "exponent too large"))?;
            degree = if neg { -e } else { e };
        }
        Ok((degree, self.modulus.reduce(coeff.unwrap_or(1))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ExtDegree::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn lp(s: &str, modulus: u64) -> LaurentPoly {
        LaurentPoly::parse(s, m(modulus)).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(lp("X^-3 + X^-2", 5).deg_plus(), Finite(-2));
        assert_eq!(lp("X^-3 + X^-2 + 1 + X^4", 5).deg_plus(), Finite(4));
        assert_eq!(LaurentPoly::zero(m(5)).deg_plus(), NegInf);
        assert_eq!(lp("X^3 + X^2", 5).deg_minus(), Finite(2));
        assert_eq!(lp("X^-3 + 1 + X^4", 5).deg_minus(), Finite(-3));
        assert_eq!(lp("1", 5).deg_minus(), Finite(0));
        assert_eq!(LaurentPoly::zero(m(5)).deg_minus(), PosInf);
    }

    #[test]
    fn ext_degree_order_and_sum() {
        assert!(NegInf < Finite(i64::MIN) && Finite(i64::MAX) < PosInf);
        assert_eq!(NegInf.checked_add(Finite(3)), Ok(NegInf));
        assert_eq!(PosInf.checked_add(Finite(-3)), Ok(PosInf));
        assert_eq!(Finite(2).checked_add(Finite(3)), Ok(Finite(5)));
        assert_eq!(NegInf.checked_add(PosInf), Err(Error::UndefinedDegreeSum));
    }

    #[test]
    fn arithmetic_examples() {
        let a = lp("X + X^-1", 2);
        assert_eq!(&a * &a, lp("X^2 + X^-2", 2));
        assert_eq!(&a * &LaurentPoly::one(m(2)), a);
        assert!((&lp("2X + 3", 6) + &lp("4X + 3", 6)).is_zero());
        assert!(matches!(
            lp("1", 2).checked_add(&lp("1", 3)),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn reduce_mod_examples() {
        let a = lp("2X + 3", 6);
        assert_eq!(a.reduce_mod(2).unwrap(), lp("1", 2));
        assert_eq!(a.reduce_mod(3).unwrap(), lp("2X", 3));
        assert!(LaurentPoly::zero(m(6)).reduce_mod(4).unwrap().is_zero());
        assert_eq!(a.reduce_mod(1), Err(Error::InvalidModulus(1)));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(lp("X^-3 + X^-2", 7).to_string(), "X^-3 + X^-2");
        assert_eq!(lp("2X + 3", 7).to_string(), "3 + 2X");
        assert_eq!(lp("0", 7).to_string(), "0");
        assert_eq!(lp("1 + X^2", 7).to_string(), "1 + X^2");
        assert_eq!(lp("X - 1", 7).to_string(), "6 + X");
        assert_eq!(lp("-X", 3).to_string(), "2X");
        assert_eq!(lp("X + X + 9", 7).to_string(), "2 + 2X");
        assert_eq!(lp(" x ^ - 1 +  3 * x ", 7).to_string(), "X^-1 + 3X");
    }

    #[test]
    fn parse_errors_carry_columns() {
        let err = LaurentPoly::parse("X + + 1", m(3)).unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 1,
                column: 5,
                message: "expected a coefficient or 'X'".into()
            }
        );
        assert!(matches!(
            LaurentPoly::parse("X^", m(3)),
            Err(Error::Parse { column: 3, .. })
        ));
        assert!(LaurentPoly::parse("", m(3)).is_err());
        assert!(LaurentPoly::parse("2Y", m(3)).is_err());
        assert!(LaurentPoly::parse("99999999999999999999999", m(3)).is_err());
    }

    fn arb_poly(modulus: u64) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-6i64..=6, 0i64..modulus as i64), 0..6)
            .prop_map(move |t| LaurentPoly::from_terms(t, m(modulus)))
    }

    fn arb_nonzero(modulus: u64) -> impl Strategy<Value = LaurentPoly> {
        arb_poly(modulus).prop_filter("nonzero", |p| !p.is_zero())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn degrees_are_additive_over_prime_fields(
            (a, b) in prop_oneof![
                (arb_nonzero(2), arb_nonzero(2)),
                (arb_nonzero(3), arb_nonzero(3)),
                (arb_nonzero(5), arb_nonzero(5)),
            ]
        ) {
            let ab = &a * &b;
            prop_assert_eq!(ab.deg_plus(), a.deg_plus().checked_add(b.deg_plus())?);
            prop_assert_eq!(ab.deg_minus(), a.deg_minus().checked_add(b.deg_minus())?);
        }
    }

    proptest! {
        #[test]
        fn degree_bounds_for_sums(a in arb_poly(6), b in arb_poly(6)) {
            let s = &a + &b;
            prop_assert!(s.deg_plus() <= a.deg_plus().max(b.deg_plus()));
            prop_assert!(s.deg_minus() >= a.deg_minus().min(b.deg_minus()));
        }

        #[test]
        fn ring_axioms(a in arb_poly(6), b in arb_poly(6), c in arb_poly(6)) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert!((&a + &(-&a)).is_zero());
        }

        #[test]
        fn reduce_mod_composes(a in arb_poly(36), pick in 0usize..4) {
            let (q, q2) = [(36, 6), (36, 12), (12, 4), (18, 2)][pick];
            let via = a.reduce_mod(q)?.reduce_mod(q2)?;
            prop_assert_eq!(via, a.reduce_mod(q2)?);
        }

        #[test]
        fn print_parse_roundtrip(a in arb_poly(7)) {
            let printed = a.to_string();
            let reparsed = LaurentPoly::parse(&printed, m(7))?;
            prop_assert_eq!(&reparsed, &a);
            prop_assert_eq!(reparsed.to_string(), printed);
        }
    }
}
