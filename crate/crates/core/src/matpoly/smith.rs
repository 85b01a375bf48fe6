//! Invariant factors of `tI - A` over the Euclidean domain `F_p(X)[t]`.
//!
//! The Smith reduction pivots on a nonzero entry of minimal `t`-degree and,
//! after each pass, rescales the remaining rows by a unit of `F_p(X)` that
//! clears coefficient denominators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matpoly::{LaMatrix, TPoly};
use crate::modarith::Modulus;
use crate::ratfunc::{lcm_den, RatFunc};
use crate::ring::FieldElem;

/// Nonconstant invariant factors `pi_1 | pi_2 | ... | pi_s`, all monic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvariantFactors {
    #[serde(skip)]
    modulus: Modulus,
    factors: Vec<TPoly<RatFunc>>,
}

impl InvariantFactors {
    pub fn factors(&self) -> &[TPoly<RatFunc>] {
        &self.factors
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn is_divisibility_chain(&self) -> bool {
        self.factors.windows(2).all(|w| w[0].divides(&w[1]))
    }

    pub fn product(&self) -> TPoly<RatFunc> {
        let one = RatFunc::from_poly(LaurentPoly::one(self.modulus)).expect("prime modulus");
        self.factors
            .iter()
            .fold(TPoly::constant(one), |acc, f| &acc * f)
    }

    /// The factors with Laurent coefficients, or `None` if some coefficient
    /// has a nontrivial denominator.
    pub fn to_laurent(&self) -> Option<Vec<TPoly<LaurentPoly>>> {
        self.factors.iter().map(TPoly::to_laurent).collect()
    }
}

/// Invariant factors of `tI - A` for `A` over a prime field.
pub fn invariant_factors(a: &LaMatrix) -> Result<InvariantFactors> {
    let p = a.modulus();
    if !p.is_prime() {
        return Err(Error::CompositeModulus(p.get()));
    }
    let n = a.dim();
    let one = RatFunc::from_poly(LaurentPoly::one(p))?;
    let mut m: Vec<Vec<TPoly<RatFunc>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = RatFunc::from_poly(-a.get(i, j))?;
                    let mut coeffs = vec![c];
                    if i == j {
                        coeffs.push(one.clone());
                    }
                    Ok(TPoly::new(coeffs))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    let diagonal = smith_diagonal(&mut m, clear_denominators);
    let factors = diagonal
        .into_iter()
        .filter(|d| d.degree().is_some_and(|deg| deg >= 1))
        .map(|d| d.make_monic())
        .collect();
    Ok(InvariantFactors { modulus: p, factors })
}

fn clear_denominators(row: &mut [TPoly<RatFunc>]) {
    let mut lcm: Option<LaurentPoly> = None;
    for c in row.iter().flat_map(|e| e.coeffs()) {
        if !c.is_zero() && !c.is_laurent() {
            lcm = Some(match lcm {
                Some(l) => lcm_den(&l, c.den()),
                None => c.den().clone(),
            });
        }
    }
    if let Some(l) = lcm {
        let scale = RatFunc::from_poly(l).expect("prime modulus");
        for e in row.iter_mut() {
            *e = e.scale(&scale);
        }
    }
}

/// Diagonalizes a square matrix over `F[t]` in place by unimodular row and
/// column operations, returning the diagonal `d_1 | d_2 | ... | d_n`
/// (each monic, or zero).
#[allow(clippy::needless_range_loop)]
pub(crate) fn smith_diagonal<F>(
    m: &mut [Vec<TPoly<F>>],
    mut rescale_row: impl FnMut(&mut [TPoly<F>]),
) -> Vec<TPoly<F>>
where
    F: FieldElem,
{
    let n = m.len();
    for k in 0..n {
        loop {
            let pivot = (k..n)
                .flat_map(|i| (k..n).map(move |j| (i, j)))
                .filter_map(|(i, j)| m[i][j].degree().map(|d| (d, i, j)))
                .min();
            let Some((_, pi, pj)) = pivot else {
                // remaining block is zero
                return (0..n).map(|i| m[i][i].make_monic()).collect();
            };
            m.swap(k, pi);
            for row in m.iter_mut() {
                row.swap(k, pj);
            }

            let mut reduced = true;
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let (q, r) = m[i][k].divrem(&m[k][k]);
                for j in k..n {
                    let sub = &q * &m[k][j];
                    m[i][j] = &m[i][j] - &sub;
                }
                reduced &= r.is_zero();
            }
            for j in k + 1..n {
                if m[k][j].is_zero() {
                    continue;
                }
                let (q, r) = m[k][j].divrem(&m[k][k]);
                for row in m.iter_mut().skip(k) {
                    let sub = &q * &row[k];
                    row[j] = &row[j] - &sub;
                }
                reduced &= r.is_zero();
            }
            if !reduced {
                continue;
            }

            // the pivot must divide the whole remaining block
            let offender = (k + 1..n).find(|&i| (k + 1..n).any(|j| !m[k][k].divides(&m[i][j])));
            match offender {
                Some(i) => {
                    for j in k..n {
                        m[k][j] = &m[k][j] + &m[i][j];
                    }
                }
                None => break,
            }
        }
        for row in m.iter_mut().skip(k + 1) {
            rescale_row(&mut row[k + 1..]);
        }
    }
    (0..n).map(|i| m[i][i].make_monic()).collect()
}
