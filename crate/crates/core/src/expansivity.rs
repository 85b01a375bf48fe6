//! Expansive polynomials and matrices.
//!
//! A monic `pi(t) = a_0 + a_1 t + ... + a_{n-1} t^{n-1} + t^n` over the
//! Laurent ring is expansive when `a_0 != 0` and
//!
//! * `deg+(a_0) > 0` and `deg+(a_0) > deg+(a_i)` for `1 <= i < n`,
//! * `deg-(a_0) < 0` and `deg-(a_0) < deg-(a_i)` for `1 <= i < n`.
//!
//! For `n = 1` the conditions on the middle coefficients are vacuous.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{ExtDegree, LaurentPoly};
use crate::matpoly::{LaMatrix, TPoly};

/// The first failing condition of the expansivity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum Violation {
    /// `a_0 = 0`.
    ZeroConstantTerm,
    /// `deg+(a_0) <= 0`.
    TopDegreeNotPositive { deg_plus: ExtDegree },
    /// `deg+(a_index) >= deg+(a_0)`.
    TopDegreeDominated {
        index: usize,
        deg_plus: ExtDegree,
        constant_deg_plus: ExtDegree,
    },
    /// `deg-(a_0) >= 0`.
    BottomDegreeNotNegative { deg_minus: ExtDegree },
    /// `deg-(a_index) <= deg-(a_0)`.
    BottomDegreeDominated {
        index: usize,
        deg_minus: ExtDegree,
        constant_deg_minus: ExtDegree,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::ZeroConstantTerm => write!(f, "constant coefficient a_0 is zero"),
            Violation::TopDegreeNotPositive { deg_plus } => {
                write!(f, "deg+(a_0) = {deg_plus} is not > 0")
            }
            Violation::TopDegreeDominated {
                index,
                deg_plus,
                constant_deg_plus,
            } => write!(
                f,
                "deg+(a_{index}) = {deg_plus} is not < deg+(a_0) = {constant_deg_plus}"
            ),
            Violation::BottomDegreeNotNegative { deg_minus } => {
                write!(f, "deg-(a_0) = {deg_minus} is not < 0")
            }
            Violation::BottomDegreeDominated {
                index,
                deg_minus,
                constant_deg_minus,
            } => write!(
                f,
                "deg-(a_{index}) = {deg_minus} is not > deg-(a_0) = {constant_deg_minus}"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Expansivity {
    pub expansive: bool,
    pub violation: Option<Violation>,
}

impl Expansivity {
    fn holds() -> Self {
        Expansivity {
            expansive: true,
            violation: None,
        }
    }

    fn fails(v: Violation) -> Self {
        Expansivity {
            expansive: false,
            violation: Some(v),
        }
    }
}

pub fn is_expansive_poly(pi: &TPoly<LaurentPoly>) -> Result<Expansivity> {
    if !pi.is_monic() || pi.degree() == Some(0) {
        return Err(Error::NotMonic);
    }
    let coeffs = pi.coeffs();
    let n = coeffs.len() - 1;
    let a0 = &coeffs[0];
    if a0.is_zero() {
        return Ok(Expansivity::fails(Violation::ZeroConstantTerm));
    }
    let top = a0.deg_plus();
    if top <= ExtDegree::Finite(0) {
        return Ok(Expansivity::fails(Violation::TopDegreeNotPositive { deg_plus: top }));
    }
    for (index, a) in coeffs.iter().enumerate().take(n).skip(1) {
        if a.deg_plus() >= top {
            return Ok(Expansivity::fails(Violation::TopDegreeDominated {
                index,
                deg_plus: a.deg_plus(),
                constant_deg_plus: top,
            }));
        }
    }
    let bottom = a0.deg_minus();
    if bottom >= ExtDegree::Finite(0) {
        return Ok(Expansivity::fails(Violation::BottomDegreeNotNegative {
            deg_minus: bottom,
        }));
    }
    for (index, a) in coeffs.iter().enumerate().take(n).skip(1) {
        if a.deg_minus() <= bottom {
            return Ok(Expansivity::fails(Violation::BottomDegreeDominated {
                index,
                deg_minus: a.deg_minus(),
                constant_deg_minus: bottom,
            }));
        }
    }
    Ok(Expansivity::holds())
}

pub fn is_expansive_matrix(a: &LaMatrix) -> Expansivity {
    is_expansive_poly(&a.charpoly()).expect("characteristic polynomials are monic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modarith::Modulus;
    use proptest::prelude::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn tp(cs: &[&str], p: u64) -> TPoly<LaurentPoly> {
        TPoly::new(cs.iter().map(|c| LaurentPoly::parse(c, m(p)).unwrap()).collect())
    }

    fn mat(rows: &[&[&str]], p: u64) -> LaMatrix {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        LaMatrix::parse(&rows, m(p)).unwrap()
    }

    #[test]
    fn polynomial_examples() {
        for p in [2, 3, 5] {
            assert!(is_expansive_poly(&tp(&["-X - X^-1", "0", "1"], p)).unwrap().expansive);
        }
        let r = is_expansive_poly(&tp(&["-X", "0", "1"], 3)).unwrap();
        assert_eq!(
            r.violation,
            Some(Violation::BottomDegreeNotNegative {
                deg_minus: ExtDegree::Finite(1)
            })
        );
        let r = is_expansive_poly(&tp(&["X^2", "-2X", "1"], 3)).unwrap();
        assert!(!r.expansive);
        assert!(is_expansive_poly(&tp(&["X + 1 + X^-1", "1"], 2)).unwrap().expansive);
    }

    #[test]
    fn dominated_middle_coefficient_is_reported_with_index() {
        let r = is_expansive_poly(&tp(&["X + X^-1", "X^2", "0", "1"], 3)).unwrap();
        assert_eq!(
            r.violation,
            Some(Violation::TopDegreeDominated {
                index: 1,
                deg_plus: ExtDegree::Finite(2),
                constant_deg_plus: ExtDegree::Finite(1),
            })
        );
        let r = is_expansive_poly(&tp(&["X^2 + X^-1", "0", "X^-1", "1"], 3)).unwrap();
        assert_eq!(
            r.violation,
            Some(Violation::BottomDegreeDominated {
                index: 2,
                deg_minus: ExtDegree::Finite(-1),
                constant_deg_minus: ExtDegree::Finite(-1),
            })
        );
    }

    #[test]
    fn rejects_non_monic() {
        assert_eq!(is_expansive_poly(&tp(&["X", "2"], 3)), Err(Error::NotMonic));
        assert_eq!(is_expansive_poly(&tp(&["1"], 3)), Err(Error::NotMonic));
        assert_eq!(is_expansive_poly(&TPoly::zero()), Err(Error::NotMonic));
    }

    #[test]
    fn matrix_examples() {
        assert!(is_expansive_matrix(&mat(&[&["0", "1"], &["X + X^-1", "0"]], 2)).expansive);
        assert!(!is_expansive_matrix(&LaMatrix::shift_identity(2, 1, m(5))).expansive);
        assert_eq!(
            is_expansive_matrix(&mat(&[&["0", "1"], &["0", "0"]], 2)).violation,
            Some(Violation::ZeroConstantTerm)
        );
    }

    fn arb_monic(p: u64) -> impl Strategy<Value = TPoly<LaurentPoly>> {
        (1usize..=3).prop_flat_map(move |deg| {
            prop::collection::vec(
                prop::collection::vec((-2i64..=2, 0i64..p as i64), 0..4),
                deg,
            )
            .prop_map(move |cs| {
                let mut coeffs: Vec<LaurentPoly> = cs
                    .into_iter()
                    .map(|t| LaurentPoly::from_terms(t, m(p)))
                    .collect();
                coeffs.push(LaurentPoly::one(m(p)));
                TPoly::new(coeffs)
            })
        })
    }

    proptest! {
        #[test]
        fn verdict_is_negation_invariant(pi in prop_oneof![arb_monic(2), arb_monic(3), arb_monic(5)]) {
            let n = pi.degree().unwrap();
            let negated = TPoly::new(
                pi.coeffs().iter().enumerate()
                    .map(|(i, c)| if i < n { -c } else { c.clone() })
                    .collect(),
            );
            prop_assert_eq!(is_expansive_poly(&pi)?, is_expansive_poly(&negated)?);
        }

        #[test]
        fn product_law(rho in arb_monic(3), tau in arb_monic(3)) {
            let both = is_expansive_poly(&rho)?.expansive && is_expansive_poly(&tau)?.expansive;
            prop_assert_eq!(is_expansive_poly(&(&rho * &tau))?.expansive, both);
        }
    }
}
