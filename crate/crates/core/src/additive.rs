//! Additive CA over finite abelian groups `G = Z/o_1 x ... x Z/o_n`.
//!
//! The local rule is `F(c)_i = sum_z f_z(c_(i+z))` with `f_z` an
//! endomorphism of `G`, given by an integer matrix `M_z` whose column `j` is
//! `f_z(e_j)`. Each primary component `Z/p^k_1 x ... x Z/p^k_n`
//! (`k_1 >= ... >= k_n`) embeds into `(Z/p^k_1)^n` by
//! `psi(h)_i = h_i p^(k_1 - k_i)`, which conjugates the rule to a linear CA.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::decider::{decide_lca, LcaRule, Verdict};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matpoly::LaMatrix;
use crate::modarith::{factor, Modulus};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    cyclic_orders: Vec<u64>,
}

impl GroupSpec {
    pub fn new(cyclic_orders: Vec<u64>) -> Result<Self> {
        if cyclic_orders.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(&o) = cyclic_orders.iter().find(|&&o| o < 2) {
            return Err(Error::InvalidGroupOrder(o));
        }
        Ok(GroupSpec { cyclic_orders })
    }

    pub fn orders(&self) -> &[u64] {
        &self.cyclic_orders
    }

    pub fn rank(&self) -> usize {
        self.cyclic_orders.len()
    }

    /// Reduces every coordinate into `[0, o_i)`.
    pub fn element(&self, g: &[i64]) -> Vec<u64> {
        g.iter()
            .zip(&self.cyclic_orders)
            .map(|(&x, &o)| x.rem_euclid(o as i64) as u64)
            .collect()
    }

    /// Total number of elements.
    pub fn size(&self) -> u64 {
        self.cyclic_orders.iter().product()
    }
}

/// The `p`-part of a group, with exponents sorted nonincreasing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimaryComponent {
    pub p: u64,
    pub exponents: Vec<u32>,
    /// `members[i]` is the cyclic factor of the group that coordinate `i`
    /// of this component comes from.
    pub members: Vec<usize>,
}

impl PrimaryComponent {
    pub fn order(&self, i: usize) -> u64 {
        self.p.pow(self.exponents[i])
    }

    pub fn top_modulus(&self) -> u64 {
        self.order(0)
    }

    /// Projects a group element onto this component.
    pub fn project(&self, g: &[u64]) -> Vec<u64> {
        self.members
            .iter()
            .enumerate()
            .map(|(i, &f)| g[f] % self.order(i))
            .collect()
    }

    pub fn psi(&self, h: &[u64]) -> Vec<u64> {
        let k1 = self.exponents[0];
        let top = self.top_modulus();
        h.iter()
            .zip(&self.exponents)
            .map(|(&x, &k)| x * self.p.pow(k1 - k) % top)
            .collect()
    }
}

pub fn primary_decompose(group: &GroupSpec) -> Vec<PrimaryComponent> {
    let mut by_prime: BTreeMap<u64, Vec<(u32, usize)>> = BTreeMap::new();
    for (idx, &o) in group.cyclic_orders.iter().enumerate() {
        for pk in factor(o).expect("orders are at least 2") {
            by_prime.entry(pk.p).or_default().push((pk.k, idx));
        }
    }
    by_prime
        .into_iter()
        .map(|(p, mut parts)| {
            parts.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
            PrimaryComponent {
                p,
                exponents: parts.iter().map(|&(k, _)| k).collect(),
                members: parts.iter().map(|&(_, f)| f).collect(),
            }
        })
        .collect()
}

/// Checks that every `M_z` defines an endomorphism: `o_i | M_ij * o_j`.
pub fn validate_rule(group: &GroupSpec, endos: &BTreeMap<i64, Vec<Vec<u64>>>) -> Result<()> {
    let n = group.rank();
    let o = &group.cyclic_orders;
    for (&offset, mat) in endos {
        if mat.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: mat.len() });
        }
        for (row, entries) in mat.iter().enumerate() {
            if entries.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: entries.len() });
            }
            for (col, &value) in entries.iter().enumerate() {
                if !(value as u128 * o[col] as u128).is_multiple_of(o[row] as u128) {
                    return Err(Error::InvalidEndomorphism {
                        offset,
                        row,
                        col,
                        value,
                        row_order: o[row],
                        col_order: o[col],
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveRule {
    group: GroupSpec,
    radius: u32,
    endos: BTreeMap<i64, Vec<Vec<u64>>>,
}

impl AdditiveRule {
    /// Entries are reduced modulo the order of their row's factor. Missing
    /// offsets are the zero endomorphism.
    pub fn new(group: GroupSpec, radius: u32, endos: BTreeMap<i64, Vec<Vec<i64>>>) -> Result<Self> {
        let n = group.rank();
        let mut reduced = BTreeMap::new();
        for (offset, mat) in endos {
            if offset.unsigned_abs() > radius as u64 {
                return Err(Error::OffsetOutOfRange { offset, radius });
            }
            if mat.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: mat.len() });
            }
            let rows = mat
                .iter()
                .zip(&group.cyclic_orders)
                .map(|(row, &o)| {
                    if row.len() != n {
                        return Err(Error::DimensionMismatch { expected: n, found: row.len() });
                    }
                    Ok(row.iter().map(|&x| x.rem_euclid(o as i64) as u64).collect())
                })
                .collect::<Result<Vec<Vec<u64>>>>()?;
            reduced.insert(offset, rows);
        }
        validate_rule(&group, &reduced)?;
        Ok(AdditiveRule { group, radius, endos: reduced })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn endos(&self) -> &BTreeMap<i64, Vec<Vec<u64>>> {
        &self.endos
    }

    /// `f_z(x)`; the zero element for a missing offset.
    pub fn apply_local(&self, z: i64, x: &[u64]) -> Vec<u64> {
        let o = &self.group.cyclic_orders;
        match self.endos.get(&z) {
            None => vec![0; o.len()],
            Some(mat) => mat
                .iter()
                .zip(o)
                .map(|(row, &oi)| {
                    row.iter()
                        .zip(x)
                        .fold(0u128, |acc, (&a, &b)| (acc + a as u128 * b as u128) % oi as u128)
                        as u64
                })
                .collect(),
        }
    }
}

/// A finitely supported configuration `Z -> G`; zero cells are not stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct GroupConfig {
    cells: BTreeMap<i64, Vec<u64>>,
}

impl GroupConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, pos: i64, value: Vec<u64>) {
        if value.iter().all(|&x| x == 0) {
            self.cells.remove(&pos);
        } else {
            self.cells.insert(pos, value);
        }
    }

    pub fn get(&self, pos: i64) -> Option<&[u64]> {
        self.cells.get(&pos).map(Vec::as_slice)
    }

    pub fn cells(&self) -> impl Iterator<Item = (i64, &[u64])> {
        self.cells.iter().map(|(&p, v)| (p, v.as_slice()))
    }

    pub fn is_zero(&self) -> bool {
        self.cells.is_empty()
    }
}

pub fn apply_additive(rule: &AdditiveRule, c: &GroupConfig) -> GroupConfig {
    let o = &rule.group.cyclic_orders;
    let mut acc: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for (&pos, x) in &c.cells {
        for &z in rule.endos.keys() {
            // cell pos feeds output position pos - z
            let image = rule.apply_local(z, x);
            let slot = acc.entry(pos - z).or_insert_with(|| vec![0; o.len()]);
            for ((s, v), &oi) in slot.iter_mut().zip(image).zip(o) {
                *s = (*s + v) % oi;
            }
        }
    }
    let mut out = GroupConfig::new();
    for (pos, v) in acc {
        out.set(pos, v);
    }
    out
}

/// The linear CA over `Z/p^k_1` conjugate to the rule's `p`-component:
/// `A = sum_z A_z X^-z` with `(A_z)_ij = p^(k_j - k_i) (M_z)_ij`.
pub fn associated_lca(component: &PrimaryComponent, rule: &AdditiveRule) -> LcaRule {
    let p = component.p;
    let n = component.exponents.len();
    let modulus = Modulus::new(component.top_modulus()).expect("prime power is at least 2");
    let entry = |mat: &[Vec<u64>], i: usize, j: usize| -> i64 {
        let (ki, kj) = (component.exponents[i], component.exponents[j]);
        let v = mat[component.members[i]][component.members[j]] % component.order(i);
        let scaled = if kj >= ki {
            v as u128 * p.pow(kj - ki) as u128 % modulus.get() as u128
        } else {
            let d = p.pow(ki - kj);
            debug_assert_eq!(v % d, 0);
            (v / d) as u128
        };
        scaled as i64
    };
    let matrix = LaMatrix::from_fn(n, modulus, |i, j| {
        LaurentPoly::from_terms(
            rule.endos.iter().map(|(&z, mat)| (-z, entry(mat, i, j))),
            modulus,
        )
    });
    LcaRule::new(matrix)
}

/// `Psi` restricted to one component: positionwise projection then `psi`,
/// as a vector of Laurent polynomials over `Z/p^k_1`.
pub fn embed_config(component: &PrimaryComponent, c: &GroupConfig) -> Vec<LaurentPoly> {
    let modulus = Modulus::new(component.top_modulus()).expect("prime power is at least 2");
    let mut out = vec![LaurentPoly::zero(modulus); component.exponents.len()];
    for (pos, g) in c.cells() {
        for (slot, v) in out.iter_mut().zip(component.psi(&component.project(g))) {
            if v != 0 {
                *slot = &*slot + &LaurentPoly::monomial(v as i64, pos, modulus);
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentVerdict {
    pub component: PrimaryComponent,
    pub lca: LcaRule,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdditiveVerdict {
    pub positively_expansive: bool,
    pub components: Vec<ComponentVerdict>,
}

pub fn decide_additive(rule: &AdditiveRule) -> AdditiveVerdict {
    let components: Vec<ComponentVerdict> = primary_decompose(&rule.group)
        .into_iter()
        .map(|component| {
            let lca = associated_lca(&component, rule);
            let verdict = decide_lca(&lca);
            ComponentVerdict { component, lca, verdict }
        })
        .collect();
    AdditiveVerdict {
        positively_expansive: components.iter().all(|c| c.verdict.positively_expansive),
        components,
    }
}
