//! Dense polynomials over `Z/pZ` (p prime), ascending coefficients, trimmed.

use crate::laurent::LaurentPoly;
use crate::modarith::Modulus;

pub(crate) type Dense = Vec<u64>;

fn trim(mut a: Dense) -> Dense {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Splits a nonzero `a` as `X^shift * poly` with `poly(0) != 0`.
pub(crate) fn from_laurent(a: &LaurentPoly) -> (i64, Dense) {
    let lo = a.deg_minus().finite().expect("nonzero polynomial");
    let hi = a.deg_plus().finite().unwrap();
    let mut out = vec![0; (hi - lo + 1) as usize];
    for (d, c) in a.terms() {
        out[(d - lo) as usize] = c;
    }
    (lo, out)
}

pub(crate) fn to_laurent(a: &[u64], shift: i64, p: Modulus) -> LaurentPoly {
    LaurentPoly::from_terms(
        a.iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i as i64 + shift, c as i64)),
        p,
    )
}

pub(crate) fn scale(a: &[u64], c: u64, p: Modulus) -> Dense {
    trim(a.iter().map(|&x| p.mul(x, c)).collect())
}

pub(crate) fn make_monic(a: &[u64], p: Modulus) -> Dense {
    let lead = *a.last().expect("nonzero polynomial");
    let inv = p.inv(lead).expect("prime modulus");
    scale(a, inv, p)
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: Modulus) -> (Dense, Dense) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), trim(rem));
    }
    let inv = p.inv(*b.last().unwrap()).expect("prime modulus");
    let mut quot = vec![0; a.len() - b.len() + 1];
    for i in (0..quot.len()).rev() {
        let c = p.mul(rem[i + b.len() - 1], inv);
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] = p.sub(rem[i + j], p.mul(c, bj));
            }
        }
    }
    (trim(quot), trim(rem))
}

/// Monic gcd; zero if both inputs are zero.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: Modulus) -> Dense {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y, p);
        x = y;
        y = r;
    }
    if x.is_empty() {
        x
    } else {
        make_monic(&x, p)
    }
}

/// Exact quotient `a / b`; panics if the division leaves a remainder.
pub(crate) fn div_exact(a: &[u64], b: &[u64], p: Modulus) -> Dense {
    let (q, r) = divrem(a, b, p);
    assert!(r.is_empty(), "inexact polynomial division");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_products() {
        let p = Modulus::new(3).unwrap();
        // (X+1)(X+2) = X^2 + 2 over F3, (X+1)^2 = X^2 + 2X + 1
        let g = gcd(&[2, 0, 1], &[1, 2, 1], p);
        assert_eq!(g, vec![1, 1]);
        assert_eq!(div_exact(&[2, 0, 1], &g, p), vec![2, 1]);
        assert_eq!(gcd(&[], &[2, 2], p), vec![1, 1]);
    }

    #[test]
    fn divrem_reconstructs() {
        let p = Modulus::new(5).unwrap();
        let a = vec![3, 1, 4, 1, 2];
        let b = vec![2, 0, 3];
        let (q, r) = divrem(&a, &b, p);
        assert!(r.len() < b.len());
        let mut back = vec![0u64; a.len()];
        for (i, &qi) in q.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                back[i + j] = p.add(back[i + j], p.mul(qi, bj));
            }
        }
        for (i, &ri) in r.iter().enumerate() {
            back[i] = p.add(back[i], ri);
        }
        assert_eq!(back, a);
    }
}
