//! Square matrices over the Laurent ring, their characteristic polynomials,
//! and invariant factors of `tI - A`.

pub mod smith;
mod tpoly;

use std::fmt;

use serde::{Serialize, Serializer};

pub use smith::{invariant_factors, InvariantFactors};
pub use tpoly::TPoly;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::modarith::Modulus;

/// An `n x n` matrix with Laurent polynomial entries over `Z/mZ`, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaMatrix {
    modulus: Modulus,
    n: usize,
    entries: Vec<LaurentPoly>,
}

impl LaMatrix {
    pub fn new(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let n = rows.len();
        let Some(first) = rows.first().and_then(|r| r.first()) else {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        };
        let modulus = first.modulus();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            for e in row {
                modulus.check_same(e.modulus())?;
                entries.push(e);
            }
        }
        Ok(LaMatrix {
            modulus,
            n,
            entries,
        })
    }

    /// Parses every entry with [`LaurentPoly::parse`].
    pub fn parse<S: AsRef<str>>(rows: &[Vec<S>], modulus: Modulus) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| LaurentPoly::parse(e.as_ref(), modulus))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(rows)
    }

    pub fn from_fn(n: usize, modulus: Modulus, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        assert!(n >= 1, "matrix dimension must be positive");
        let entries = (0..n * n).map(|k| f(k / n, k % n)).collect();
        LaMatrix {
            modulus,
            n,
            entries,
        }
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        Self::from_fn(n, modulus, |i, j| LaurentPoly::constant((i == j) as i64, modulus))
    }

    pub fn zero(n: usize, modulus: Modulus) -> Self {
        Self::from_fn(n, modulus, |_, _| LaurentPoly::zero(modulus))
    }

    /// `X^k I_n`.
    pub fn shift_identity(n: usize, k: i64, modulus: Modulus) -> Self {
        Self::from_fn(n, modulus, |i, j| {
            LaurentPoly::monomial((i == j) as i64, k, modulus)
        })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[LaurentPoly]> {
        self.entries.chunks(self.n)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, self.modulus, |i, j| self.get(j, i).clone())
    }

    /// `P A P^T` for the permutation matrix `P` sending basis vector
    /// `perm[i]` to `i`, i.e. entry `(i, j)` is `A[perm[i]][perm[j]]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        Self::from_fn(self.n, self.modulus, |i, j| self.get(perm[i], perm[j]).clone())
    }

    /// Substitutes `X -> X^-1` in every entry (mirror image of the rule).
    pub fn reflect(&self) -> Self {
        Self::from_fn(self.n, self.modulus, |i, j| self.get(i, j).reflect())
    }

    pub fn reduce_mod(&self, q: u64) -> Result<Self> {
        let q_mod = Modulus::new(q)?;
        Ok(LaMatrix {
            modulus: q_mod,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| e.reduce_mod(q))
                .collect::<Result<_>>()?,
        })
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[LaurentPoly]) -> Result<Vec<LaurentPoly>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.len(),
            });
        }
        self.rows()
            .map(|row| {
                row.iter().zip(v).try_fold(LaurentPoly::zero(self.modulus), |acc, (a, x)| {
                    acc.checked_add(&a.checked_mul(x)?)
                })
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.modulus.check_same(other.modulus)?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(Self::from_fn(self.n, self.modulus, |i, j| {
            (0..self.n).fold(LaurentPoly::zero(self.modulus), |acc, k| {
                &acc + &(self.get(i, k) * other.get(k, j))
            })
        }))
    }

    /// Largest `|degree|` over all entries; 0 for a constant matrix.
    pub fn radius(&self) -> u32 {
        self.entries
            .iter()
            .flat_map(|e| [e.deg_plus().finite(), e.deg_minus().finite()])
            .flatten()
            .map(|d| d.unsigned_abs() as u32)
            .max()
            .unwrap_or(0)
    }

    /// The constant matrix multiplying `X^d`, entries in `[0, m)`.
    pub fn coefficient_matrix(&self, d: i64) -> Vec<Vec<u64>> {
        self.rows()
            .map(|row| row.iter().map(|e| e.coeff(d)).collect())
            .collect()
    }

    /// Characteristic polynomial `det(tI - A)` by Berkowitz's division-free
    /// algorithm, valid over any commutative ring (including `Z/mZ` with
    /// zero divisors).
    pub fn charpoly(&self) -> TPoly<LaurentPoly> {
        let m = self.modulus;
        let zero = LaurentPoly::zero(m);
        // coefficients in descending powers of t; c[0] = 1
        let mut c = vec![LaurentPoly::one(m), -self.get(0, 0)];
        for r in 1..self.n {
            // Toeplitz column: 1, -a_rr, -R S, -R A S, ..., -R A^(r-1) S
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(LaurentPoly::one(m));
            toeplitz.push(-self.get(r, r));
            let mut v: Vec<LaurentPoly> = (0..r).map(|i| self.get(i, r).clone()).collect();
            for k in 0..r {
                if k > 0 {
                    v = (0..r)
                        .map(|i| {
                            (0..r).fold(zero.clone(), |acc, j| &acc + &(self.get(i, j) * &v[j]))
                        })
                        .collect();
                }
                let rs = (0..r).fold(zero.clone(), |acc, j| &acc + &(self.get(r, j) * &v[j]));
                toeplitz.push(-&rs);
            }
            c = (0..r + 2)
                .map(|i| {
                    (0..=i.min(r)).fold(zero.clone(), |acc, j| &acc + &(&toeplitz[i - j] * &c[j]))
                })
                .collect();
        }
        c.reverse();
        TPoly::new(c)
    }

    /// `det(A) = (-1)^n * charpoly(A)(0)`.
    pub fn det(&self) -> LaurentPoly {
        let cp = self.charpoly();
        let a0 = cp
            .coeff(0)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.modulus));
        if self.n.is_multiple_of(2) {
            a0
        } else {
            -&a0
        }
    }
}

impl fmt::Display for LaMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// Serialized as nested arrays of entry strings.
impl Serialize for LaMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.rows())
    }
}
