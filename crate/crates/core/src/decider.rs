//! Positive expansivity of linear CA over `(Z/mZ)^n`.
//!
//! For `m = p_1^k_1 ... p_s^k_s` the automaton splits into its components
//! over `Z/p_i^k_i Z`, each of which is positively expansive exactly when
//! the matrix reduced mod `p_i` is expansive.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::expansivity::{is_expansive_matrix, Violation};
use crate::laurent::LaurentPoly;
use crate::matpoly::{LaMatrix, TPoly};
use crate::modarith::{factor, Modulus};

/// A linear CA given by its associated Laurent matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LcaRule {
    pub modulus: Modulus,
    pub n: usize,
    pub matrix: LaMatrix,
    pub radius: u32,
}

impl LcaRule {
    pub fn new(matrix: LaMatrix) -> Self {
        LcaRule {
            modulus: matrix.modulus(),
            n: matrix.dim(),
            radius: matrix.radius(),
            matrix,
        }
    }

    /// Builds `A = sum_z M_z X^-z` from local matrices, so that
    /// `F(c)_i = sum_z M_z c_(i+z)`.
    pub fn from_offsets(modulus: Modulus, n: usize, local: &BTreeMap<i64, Vec<Vec<i64>>>) -> Result<Self> {
        for mat in local.values() {
            if mat.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: mat.len() });
            }
            if let Some(row) = mat.iter().find(|r| r.len() != n) {
                return Err(Error::DimensionMismatch { expected: n, found: row.len() });
            }
        }
        let matrix = LaMatrix::from_fn(n, modulus, |i, j| {
            LaurentPoly::from_terms(local.iter().map(|(z, mat)| (-z, mat[i][j])), modulus)
        });
        Ok(Self::new(matrix))
    }

    pub fn reduce_mod(&self, q: u64) -> Result<Self> {
        Ok(Self::new(self.matrix.reduce_mod(q)?))
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.matrix.transpose())
    }

    /// The mirror rule `c_i -> c_-i`, i.e. `X -> X^-1`.
    pub fn reflect(&self) -> Self {
        Self::new(self.matrix.reflect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeVerdict {
    pub p: u64,
    pub k: u32,
    /// Characteristic polynomial of `A mod p`.
    pub charpoly: TPoly<LaurentPoly>,
    pub expansive: bool,
    pub violation: Option<Violation>,
    /// `det(A mod p) != 0`, i.e. the component over `Z/pZ` is surjective.
    pub surjective: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub positively_expansive: bool,
    pub per_prime: Vec<PrimeVerdict>,
}

pub fn decide_lca(rule: &LcaRule) -> Verdict {
    let per_prime: Vec<PrimeVerdict> = factor(rule.modulus.get())
        .expect("modulus is at least 2")
        .into_iter()
        .map(|pk| {
            let reduced = rule.matrix.reduce_mod(pk.p).expect("prime divides the modulus");
            let e = is_expansive_matrix(&reduced);
            PrimeVerdict {
                p: pk.p,
                k: pk.k,
                charpoly: reduced.charpoly(),
                expansive: e.expansive,
                violation: e.violation,
                surjective: !reduced.det().is_zero(),
            }
        })
        .collect();
    Verdict {
        positively_expansive: per_prime.iter().all(|v| v.expansive),
        per_prime,
    }
}
