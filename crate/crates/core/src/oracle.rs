//! Brute-force dynamical cross-check of the decider.
//!
//! A linear CA is positively expansive iff there is `L > 0` such that for
//! every `v` with `deg+(v) = 0`, some `A^l v` with `l <= L` has a nonzero
//! coefficient at a position `>= 1`, and symmetrically for `deg-`. Positions
//! `>= 1` of `A^l v` depend only on positions `>= 1 - l r` of `v`, so the
//! condition can be checked exactly on finite windows.
//!
//! [`verify_window`] checks that condition for `L = 1, 2, ...`;
//! [`falsify`] looks for finite configurations whose degree never grows
//! within a bounded number of steps.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::decider::LcaRule;
use crate::laurent::{ExtDegree, LaurentPoly};
use crate::modarith::Modulus;

pub const DEFAULT_LHAT_MAX: u32 = 8;
pub const DEFAULT_WIDTH: u32 = 4;
pub const DEFAULT_STEPS: u32 = 16;
/// Largest number of windows enumerated for one side and one `lhat`.
pub const DEFAULT_WINDOW_CAP: u64 = 1 << 22;
/// Above this many candidates the falsifier samples instead of enumerating.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;
pub const SAMPLE_COUNT: u64 = 100_000;

/// A finitely supported configuration over `(Z/mZ)^n`; zero cells are not
/// stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteConfig {
    modulus: Modulus,
    n: usize,
    cells: BTreeMap<i64, Vec<u64>>,
}

impl FiniteConfig {
    pub fn zero(n: usize, modulus: Modulus) -> Self {
        FiniteConfig { modulus, n, cells: BTreeMap::new() }
    }

    /// `e_(i+1)` at position `pos`.
    pub fn unit(n: usize, i: usize, pos: i64, modulus: Modulus) -> Self {
        let mut c = Self::zero(n, modulus);
        let mut v = vec![0; n];
        v[i] = 1;
        c.set(pos, &v);
        c
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, pos: i64, v: &[u64]) {
        assert_eq!(v.len(), self.n);
        let v: Vec<u64> = v.iter().map(|&x| self.modulus.reduce(x)).collect();
        if v.iter().all(|&x| x == 0) {
            self.cells.remove(&pos);
        } else {
            self.cells.insert(pos, v);
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

    pub fn deg_plus(&self) -> ExtDegree {
        self.cells.keys().next_back().map_or(ExtDegree::NegInf, |&p| ExtDegree::Finite(p))
    }

    pub fn deg_minus(&self) -> ExtDegree {
        self.cells.keys().next().map_or(ExtDegree::PosInf, |&p| ExtDegree::Finite(p))
    }

    /// Mirror image, position `p -> -p`.
    pub fn reflect(&self) -> Self {
        FiniteConfig {
            modulus: self.modulus,
            n: self.n,
            cells: self.cells.iter().map(|(&p, v)| (-p, v.clone())).collect(),
        }
    }

    /// Component `i` as the Laurent polynomial `sum_p c_p,i X^p`.
    pub fn to_laurent(&self) -> Vec<LaurentPoly> {
        (0..self.n)
            .map(|i| {
                LaurentPoly::from_terms(
                    self.cells.iter().map(|(&p, v)| (p, v[i] as i64)),
                    self.modulus,
                )
            })
            .collect()
    }

    pub fn from_laurent(v: &[LaurentPoly], modulus: Modulus) -> Self {
        let mut c = Self::zero(v.len(), modulus);
        let positions: std::collections::BTreeSet<i64> =
            v.iter().flat_map(|p| p.terms().map(|(d, _)| d)).collect();
        for pos in positions {
            let col: Vec<u64> = v.iter().map(|p| p.coeff(pos)).collect();
            c.set(pos, &col);
        }
        c
    }
}

/// Prints as `{pos: [v_1, ..., v_n], ...}` in increasing position.
impl std::fmt::Display for FiniteConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (k, (p, v)) in self.cells.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            let vs: Vec<String> = v.iter().map(u64::to_string).collect();
            write!(f, "{p}: [{}]", vs.join(", "))?;
        }
        f.write_str("}")
    }
}

pub fn deg_plus_config(c: &FiniteConfig) -> ExtDegree {
    c.deg_plus()
}

pub fn deg_minus_config(c: &FiniteConfig) -> ExtDegree {
    c.deg_minus()
}

/// One step of the CA: the coefficient of `X^d` in `A` carries position `p`
/// to `p + d`.
pub fn step(rule: &LcaRule, c: &FiniteConfig) -> FiniteConfig {
    let m = rule.modulus;
    assert_eq!(m, c.modulus, "modulus mismatch");
    let n = rule.n;
    let coeffs = Kernel::new(rule);
    let mut acc: BTreeMap<i64, Vec<u64>> = BTreeMap::new();
    for (&pos, v) in &c.cells {
        for (d, mat) in &coeffs.terms {
            let slot = acc.entry(pos + d).or_insert_with(|| vec![0; n]);
            for i in 0..n {
                let s = (0..n).fold(slot[i], |s, j| m.add(s, m.mul(mat[i * n + j], v[j])));
                slot[i] = s;
            }
        }
    }
    let mut out = FiniteConfig::zero(n, m);
    for (pos, v) in acc {
        out.set(pos, &v);
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OracleResult {
    /// Every nonzero `v` with `deg+(v) = 0` reaches a position `>= 1` within
    /// `lhat` steps, and symmetrically on the right.
    VerifiedExpansive { lhat: u32 },
    /// A configuration whose degree on `side` never grew in `steps` steps.
    /// Evidence from a bounded search, not a proof.
    RefutedByWitness { config: FiniteConfig, side: Side, steps: u32 },
    /// `budget` is the largest `lhat` fully checked by the window verifier,
    /// or the number of configurations tried by the falsifier.
    Inconclusive { budget: u64 },
}

/// Coefficient matrices `(d, C_d)` of `A = sum_d C_d X^d`, row-major.
struct Kernel {
    m: Modulus,
    n: usize,
    r: i64,
    terms: Vec<(i64, Vec<u64>)>,
    // sums of products fit in u64 without reducing term by term
    lazy: bool,
}

impl Kernel {
    fn new(rule: &LcaRule) -> Self {
        let r = rule.radius as i64;
        let terms: Vec<_> = (-r..=r)
            .map(|d| (d, rule.matrix.coefficient_matrix(d).concat()))
            .filter(|(_, c)| c.iter().any(|&x| x != 0))
            .collect();
        let top = rule.modulus.get() as u128 - 1;
        let lazy = (terms.len() * rule.n) as u128 * top * top < u64::MAX as u128;
        Kernel { m: rule.modulus, n: rule.n, r, terms, lazy }
    }

    /// `state` holds columns for positions `lo..=0` (flattened), with all
    /// positions above 0 zero and all positions below `lo` zero. Returns the
    /// first step `l <= steps` at which `A^l v` has a nonzero coefficient at
    /// a position `>= 1`. Positions that cannot influence `>= 1` within the
    /// remaining steps are dropped as the simulation proceeds.
    fn escapes_up(&self, state: &[u64], lo: i64, steps: u32, buf: &mut Vec<u64>) -> Option<u32> {
        let (n, r, m) = (self.n, self.r, self.m);
        if r == 0 {
            return None;
        }
        let col = |lb: i64, p: i64| -> usize { ((p - lb) as usize) * n };
        let mut lb = lo.max(1 - steps as i64 * r);
        let mut cur: Vec<u64> = state[col(lo, lb)..].to_vec();
        for s in 0..steps {
            let remaining = (steps - s - 1) as i64;
            let next_lb = (lb - r).max(1 - remaining * r);
            let width = (r - next_lb + 1) as usize;
            buf.clear();
            buf.resize(width * n, 0);
            for (d, mat) in &self.terms {
                for q in next_lb..=r {
                    let src = q - d;
                    if src < lb || src > 0 {
                        continue;
                    }
                    let si = col(lb, src);
                    let di = col(next_lb, q);
                    for i in 0..n {
                        let row = &mat[i * n..(i + 1) * n];
                        let src = &cur[si..si + n];
                        let mut acc = buf[di + i];
                        if self.lazy {
                            acc += row.iter().zip(src).map(|(a, b)| a * b).sum::<u64>();
                        } else {
                            for (&a, &b) in row.iter().zip(src) {
                                acc = m.add(acc, m.mul(a, b));
                            }
                        }
                        buf[di + i] = acc;
                    }
                }
            }
            if self.lazy {
                let mv = m.get();
                buf.iter_mut().for_each(|x| *x %= mv);
            }
            let split = col(next_lb, 1);
            if buf[split..].iter().any(|&x| x != 0) {
                return Some(s + 1);
            }
            buf.truncate(split);
            std::mem::swap(&mut cur, buf);
            lb = next_lb;
        }
        None
    }
}

/// Decodes `idx` into columns for positions `lo..=0`, stored bottom first;
/// the top column cycles slowest and runs over nonzero values only.
fn decode_window(idx: u64, width: u32, n: usize, m: u64, out: &mut [u64]) {
    let base = m.pow(n as u32);
    let mut rest = idx;
    // lower columns, position -1 down to lo
    let mut digits = Vec::with_capacity(width as usize);
    for _ in 1..width {
        digits.push(rest % base);
        rest /= base;
    }
    digits.reverse();
    // digits[0] belongs to the lowest position
    let top = rest + 1;
    let write = |code: u64, slot: &mut [u64]| {
        let mut c = code;
        for x in slot.iter_mut() {
            *x = c % m;
            c /= m;
        }
    };
    for (k, &d) in digits.iter().enumerate() {
        write(d, &mut out[k * n..(k + 1) * n]);
    }
    let k = (width - 1) as usize;
    write(top, &mut out[k * n..(k + 1) * n]);
}

fn window_count(width: u32, n: usize, m: u64) -> Option<u64> {
    let base = (m as u128).checked_pow(n as u32)?;
    let total = (base - 1).checked_mul(base.checked_pow(width - 1)?)?;
    u64::try_from(total).ok()
}

/// All windows pass the escape test with `lhat` steps. The lowest column of
/// the `lhat r + 1` wide window never reaches a position `>= 1` within
/// `lhat` steps, so only the top `lhat r` columns are enumerated.
fn side_passes(kernel: &Kernel, lhat: u32, cap: u64) -> Option<bool> {
    let width = (lhat as i64 * kernel.r).max(1) as u32;
    let count = window_count(width, kernel.n, kernel.m.get()).filter(|&c| c <= cap)?;
    let lo = 1 - width as i64;
    let n = kernel.n;
    let m = kernel.m.get();
    let check = |idx: u64, state: &mut Vec<u64>, buf: &mut Vec<u64>| -> bool {
        decode_window(idx, width, n, m, state);
        kernel.escapes_up(state, lo, lhat, buf).is_some()
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        Some(
            (0..count)
                .into_par_iter()
                .try_for_each_init(
                    || (vec![0u64; width as usize * n], Vec::new()),
                    |(state, buf), idx| if check(idx, state, buf) { Ok(()) } else { Err(()) },
                )
                .is_ok(),
        )
    }
    #[cfg(not(feature = "parallel"))]
    {
        let (mut state, mut buf) = (vec![0u64; width as usize * n], Vec::new());
        Some((0..count).all(|idx| check(idx, &mut state, &mut buf)))
    }
}

/// Smallest `lhat <= lhat_max` passing one side, `Err(checked)` otherwise.
fn minimal_lhat(kernel: &Kernel, lhat_max: u32, cap: u64) -> Result<u32, u32> {
    for lhat in 1..=lhat_max {
        match side_passes(kernel, lhat, cap) {
            Some(true) => return Ok(lhat),
            Some(false) => {}
            None => return Err(lhat - 1),
        }
    }
    Err(lhat_max)
}

pub fn verify_window(rule: &LcaRule, lhat_max: u32) -> OracleResult {
    verify_window_capped(rule, lhat_max, DEFAULT_WINDOW_CAP)
}

/// Like [`verify_window`]; an `lhat` whose enumeration exceeds `cap`
/// windows ends the search.
pub fn verify_window_capped(rule: &LcaRule, lhat_max: u32, cap: u64) -> OracleResult {
    assert!(lhat_max >= 1);
    let left = minimal_lhat(&Kernel::new(rule), lhat_max, cap);
    let Ok(l) = left else {
        return OracleResult::Inconclusive { budget: left.unwrap_err() as u64 };
    };
    // by monotonicity in lhat, the right side only needs to reach l
    match minimal_lhat(&Kernel::new(&rule.reflect()), lhat_max, cap) {
        Ok(r) => OracleResult::VerifiedExpansive { lhat: l.max(r) },
        Err(checked) => OracleResult::Inconclusive { budget: checked as u64 },
    }
}

/// Searches `v` with support in `[-width + 1, 0]` and `deg+(v) = 0` whose
/// orbit keeps `deg+ <= 0` for `steps` steps.
fn falsify_up(kernel: &Kernel, width: u32, steps: u32, seed: u64) -> Result<FiniteConfig, u64> {
    let n = kernel.n;
    let m = kernel.m.get();
    let lo = 1 - width as i64;
    let stays = |state: &mut Vec<u64>, buf: &mut Vec<u64>| kernel.escapes_up(state, lo, steps, buf).is_none();
    let to_config = |state: &[u64]| {
        let mut c = FiniteConfig::zero(n, kernel.m);
        for (k, colv) in state.chunks(n).enumerate() {
            c.set(lo + k as i64, colv);
        }
        c
    };
    let sampled: Option<Vec<u64>> = match window_count(width, n, m) {
        Some(count) if count <= EXHAUSTIVE_LIMIT => None,
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let len = width as usize * n;
            let mut all = Vec::with_capacity(SAMPLE_COUNT as usize * len);
            for _ in 0..SAMPLE_COUNT {
                let start = all.len();
                all.extend((0..len).map(|_| rng.gen_range(0..m)));
                let top = start + len - n;
                if all[top..].iter().all(|&x| x == 0) {
                    let i = rng.gen_range(0..n);
                    all[top + i] = rng.gen_range(1..m);
                }
            }
            Some(all)
        }
    };
    let tried = match &sampled {
        Some(_) => SAMPLE_COUNT,
        None => window_count(width, n, m).unwrap(),
    };
    let load = |idx: u64, state: &mut Vec<u64>| match &sampled {
        Some(all) => {
            let len = state.len();
            state.copy_from_slice(&all[idx as usize * len..(idx as usize + 1) * len]);
        }
        None => decode_window(idx, width, n, m, state),
    };
    let len = width as usize * n;
    #[cfg(feature = "parallel")]
    let found = {
        use rayon::prelude::*;
        (0..tried).into_par_iter().find_first(|&idx| {
            let mut state = vec![0; len];
            load(idx, &mut state);
            stays(&mut state, &mut Vec::new())
        })
    };
    #[cfg(not(feature = "parallel"))]
    let found = {
        let (mut state, mut buf) = (vec![0; len], Vec::new());
        (0..tried).find(|&idx| {
            load(idx, &mut state);
            stays(&mut state, &mut buf)
        })
    };
    let found = found.map(|idx| {
        let mut state = vec![0; len];
        load(idx, &mut state);
        state
    });
    found.map(|s| to_config(&s)).ok_or(tried)
}

/// Bounded search for a witness on one side.
pub fn falsify_side(rule: &LcaRule, side: Side, width: u32, steps: u32, seed: u64) -> OracleResult {
    assert!(width >= 1 && steps >= 1);
    let oriented = match side {
        Side::Left => rule.clone(),
        Side::Right => rule.reflect(),
    };
    match falsify_up(&Kernel::new(&oriented), width, steps, seed) {
        Ok(config) => OracleResult::RefutedByWitness {
            config: match side {
                Side::Left => config,
                Side::Right => config.reflect(),
            },
            side,
            steps,
        },
        Err(tried) => OracleResult::Inconclusive { budget: tried },
    }
}

/// Left side first, then right; the first witness found is returned.
pub fn falsify(rule: &LcaRule, width: u32, steps: u32, seed: u64) -> OracleResult {
    match falsify_side(rule, Side::Left, width, steps, seed) {
        w @ OracleResult::RefutedByWitness { .. } => w,
        OracleResult::Inconclusive { budget: left } => match falsify_side(rule, Side::Right, width, steps, seed) {
            w @ OracleResult::RefutedByWitness { .. } => w,
            OracleResult::Inconclusive { budget: right } => OracleResult::Inconclusive { budget: left + right },
            OracleResult::VerifiedExpansive { .. } => unreachable!(),
        },
        OracleResult::VerifiedExpansive { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests;
