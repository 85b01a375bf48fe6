use proptest::prelude::*;

use super::*;
use crate::decider::decide_lca;
use crate::matpoly::LaMatrix;

fn m(v: u64) -> Modulus {
    Modulus::new(v).unwrap()
}

fn rule(rows: &[&[&str]], modulus: u64) -> LcaRule {
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    LcaRule::new(LaMatrix::parse(&rows, m(modulus)).unwrap())
}

fn config(n: usize, modulus: u64, cells: &[(i64, Vec<u64>)]) -> FiniteConfig {
    let mut c = FiniteConfig::zero(n, m(modulus));
    for (p, v) in cells {
        c.set(*p, v);
    }
    c
}

fn iterate(r: &LcaRule, c: &FiniteConfig, steps: u32) -> Vec<FiniteConfig> {
    let mut out = vec![c.clone()];
    for _ in 0..steps {
        let next = step(r, out.last().unwrap());
        out.push(next);
    }
    out
}

#[test]
fn step_examples() {
    let shift = LcaRule::new(LaMatrix::shift_identity(2, 1, m(3)));
    let e1 = FiniteConfig::unit(2, 0, 0, m(3));
    assert_eq!(step(&shift, &e1), FiniteConfig::unit(2, 0, 1, m(3)));

    let zero = LcaRule::new(LaMatrix::zero(2, m(3)));
    assert!(step(&zero, &config(2, 3, &[(0, vec![1, 2]), (4, vec![0, 1])])).is_zero());

    let r = rule(&[&["0", "1"], &["X", "0"]], 2);
    assert_eq!(step(&r, &FiniteConfig::unit(2, 1, 0, m(2))), FiniteConfig::unit(2, 0, 0, m(2)));
}

#[test]
fn degree_examples() {
    let u = FiniteConfig::unit(1, 0, 0, m(2));
    assert_eq!((u.deg_plus(), u.deg_minus()), (ExtDegree::Finite(0), ExtDegree::Finite(0)));
    let z = FiniteConfig::zero(2, m(2));
    assert_eq!((deg_plus_config(&z), deg_minus_config(&z)), (ExtDegree::NegInf, ExtDegree::PosInf));
    let c = config(2, 5, &[(-2, vec![1, 0]), (3, vec![0, 4]), (1, vec![0, 0])]);
    assert_eq!((c.deg_plus(), c.deg_minus()), (ExtDegree::Finite(3), ExtDegree::Finite(-2)));
}

#[test]
fn verify_examples() {
    let r = rule(&[&["0", "1"], &["X + X^-1", "0"]], 2);
    assert!(matches!(verify_window(&r, 8), OracleResult::VerifiedExpansive { lhat } if lhat <= 8));
    for n in 1..=2 {
        let s = LcaRule::new(LaMatrix::shift_identity(n, 1, m(2)));
        assert_eq!(verify_window(&s, 6), OracleResult::Inconclusive { budget: 6 });
    }
    assert_eq!(
        verify_window(&rule(&[&["X + X^-1"]], 2), 8),
        OracleResult::VerifiedExpansive { lhat: 1 }
    );
    // constant rules never move the support
    assert_eq!(verify_window(&rule(&[&["1"]], 3), 3), OracleResult::Inconclusive { budget: 3 });
}

#[test]
fn verify_respects_window_cap() {
    let r = rule(&[&["0", "1"], &["X + X^-1", "0"]], 4);
    // 15 * 16^(lhat - 1) windows: lhat = 2 needs 240
    assert_eq!(verify_window_capped(&r, 8, 100), OracleResult::Inconclusive { budget: 1 });
}

#[test]
fn falsify_examples() {
    for n in 1..=3 {
        let s = LcaRule::new(LaMatrix::shift_identity(n, 1, m(2)));
        assert_eq!(
            falsify(&s, 4, 16, 0),
            OracleResult::RefutedByWitness {
                config: FiniteConfig::unit(n, 0, 0, m(2)),
                side: Side::Right,
                steps: 16,
            }
        );
    }
    let id = rule(&[&["1"]], 2);
    for side in [Side::Left, Side::Right] {
        assert!(matches!(
            falsify_side(&id, side, 4, 16, 0),
            OracleResult::RefutedByWitness { side: s, .. } if s == side
        ));
    }
    let r = rule(&[&["0", "1"], &["X + X^-1", "0"]], 2);
    assert_eq!(falsify(&r, 4, 16, 0), OracleResult::Inconclusive { budget: 2 * 3 * 64 });
}

#[test]
fn falsify_samples_large_spaces_deterministically() {
    // 8^2 symbols and width 4: 63 * 64^3 candidates exceed the exhaustive limit
    let s = LcaRule::new(LaMatrix::shift_identity(2, -1, m(8)));
    let a = falsify(&s, 4, 8, 7);
    assert_eq!(a, falsify(&s, 4, 8, 7));
    assert!(matches!(a, OracleResult::RefutedByWitness { side: Side::Left, .. }));
    let r = rule(&[&["0", "1"], &["X + X^-1", "0"]], 8);
    assert_eq!(falsify(&r, 4, 8, 1), OracleResult::Inconclusive { budget: 2 * SAMPLE_COUNT });
}

#[test]
fn witnesses_really_stay_bounded() {
    let r = rule(&[&["X", "1"], &["0", "1 + X"]], 3);
    if let OracleResult::RefutedByWitness { config, side, steps } = falsify(&r, 3, 10, 0) {
        for c in iterate(&r, &config, steps).iter().skip(1) {
            match side {
                Side::Left => assert!(c.deg_plus() <= ExtDegree::Finite(0)),
                Side::Right => assert!(c.deg_minus() >= ExtDegree::Finite(0)),
            }
        }
    } else {
        panic!("expected a witness");
    }
}

#[test]
fn window_decoding_is_lexicographic_top_first() {
    let mut out = vec![0; 4];
    decode_window(0, 2, 2, 2, &mut out);
    assert_eq!(out, vec![0, 0, 1, 0]);
    decode_window(1, 2, 2, 2, &mut out);
    assert_eq!(out, vec![1, 0, 1, 0]);
    decode_window(4, 2, 2, 2, &mut out);
    assert_eq!(out, vec![0, 0, 0, 1]);
    assert_eq!(window_count(2, 2, 2), Some(12));
}

fn arb_rule() -> impl Strategy<Value = LcaRule> {
    (prop_oneof![Just(2u64), Just(3), Just(4)], 1usize..=2, 1i64..=2).prop_flat_map(|(modulus, n, r)| {
        prop::collection::vec(prop::collection::vec((-r..=r, 0..modulus as i64), 0..4), n * n).prop_map(
            move |entries| {
                let mut it = entries.into_iter();
                LcaRule::new(LaMatrix::from_fn(n, m(modulus), |_, _| {
                    LaurentPoly::from_terms(it.next().unwrap(), m(modulus))
                }))
            },
        )
    })
}

fn arb_cells(n: usize, modulus: u64, lo: i64, hi: i64, max: usize) -> impl Strategy<Value = Vec<(i64, Vec<u64>)>> {
    prop::collection::vec((lo..=hi, prop::collection::vec(0..modulus, n)), 0..=max)
}

fn above_zero(c: &FiniteConfig) -> Vec<(i64, Vec<u64>)> {
    c.cells().filter(|&(p, _)| p >= 1).map(|(p, v)| (p, v.to_vec())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn window_determinism(
        (r, lhat, window, tail_a, tail_b) in (arb_rule(), 1u32..=4).prop_flat_map(|(r, lhat)| {
            let (n, modulus) = (r.n, r.modulus.get());
            let w = lhat as i64 * r.radius.max(1) as i64;
            (
                Just(r),
                Just(lhat),
                arb_cells(n, modulus, -w, 0, 6),
                arb_cells(n, modulus, -w - 8, -w - 1, 4),
                arb_cells(n, modulus, -w - 8, -w - 1, 4),
            )
        })
    ) {
        let n = r.n;
        let modulus = r.modulus.get();
        let mut a = config(n, modulus, &window);
        a.set(0, &vec![1; n]);
        let mut b = a.clone();
        for (p, v) in &tail_a {
            a.set(*p, v);
        }
        for (p, v) in &tail_b {
            b.set(*p, v);
        }
        let (oa, ob) = (iterate(&r, &a, lhat), iterate(&r, &b, lhat));
        for (x, y) in oa.iter().zip(&ob) {
            prop_assert_eq!(above_zero(x), above_zero(y));
        }
    }

    #[test]
    fn truncated_escape_matches_full_simulation(
        (r, steps, cells) in (arb_rule(), 1u32..=5).prop_flat_map(|(r, steps)| {
            let (n, modulus) = (r.n, r.modulus.get());
            (Just(r), Just(steps), arb_cells(n, modulus, -7, 0, 6))
        })
    ) {
        let n = r.n;
        let mut c = config(n, r.modulus.get(), &cells);
        c.set(0, &vec![1; n]);
        let lo = -7;
        let mut state = vec![0; 8 * n];
        for (p, v) in c.cells() {
            state[(p - lo) as usize * n..][..n].copy_from_slice(v);
        }
        let expected = iterate(&r, &c, steps)
            .iter()
            .position(|x| x.deg_plus() >= ExtDegree::Finite(1))
            .map(|l| l as u32);
        prop_assert_eq!(Kernel::new(&r).escapes_up(&state, lo, steps, &mut Vec::new()), expected);
    }

    #[test]
    fn step_agrees_with_matrix_action(
        (r, cells) in arb_rule().prop_flat_map(|r| {
            let (n, modulus) = (r.n, r.modulus.get());
            (Just(r), arb_cells(n, modulus, -5, 5, 6))
        })
    ) {
        let c = config(r.n, r.modulus.get(), &cells);
        let via_matrix = FiniteConfig::from_laurent(&r.matrix.apply(&c.to_laurent()).unwrap(), r.modulus);
        prop_assert_eq!(step(&r, &c), via_matrix);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn oracle_never_contradicts_decider(r in arb_rule()) {
        let expansive = decide_lca(&r).positively_expansive;
        if let OracleResult::VerifiedExpansive { .. } = verify_window_capped(&r, 4, 1 << 16) {
            prop_assert!(expansive);
        }
        if let OracleResult::RefutedByWitness { .. } = falsify(&r, 3, 8, 0) {
            prop_assert!(!expansive);
        }
    }

    #[test]
    fn verified_rules_grow_in_both_directions(
        (r, cells) in arb_rule().prop_flat_map(|r| {
            let (n, modulus) = (r.n, r.modulus.get());
            (Just(r), prop::collection::vec(arb_cells(n, modulus, -4, 4, 5), 5))
        })
    ) {
        if let OracleResult::VerifiedExpansive { lhat } = verify_window_capped(&r, 4, 1 << 16) {
            for cs in &cells {
                let c = config(r.n, r.modulus.get(), cs);
                if c.is_zero() {
                    continue;
                }
                let orbit = iterate(&r, &c, 10 * lhat);
                for t in 0..orbit.len() - lhat as usize {
                    let window = &orbit[t + 1..=t + lhat as usize];
                    let up = orbit[t].deg_plus().finite().unwrap() + 1;
                    let down = orbit[t].deg_minus().finite().unwrap() - 1;
                    prop_assert!(window.iter().any(|x| x.deg_plus() >= ExtDegree::Finite(up)));
                    prop_assert!(window.iter().any(|x| x.deg_minus() <= ExtDegree::Finite(down)));
                }
            }
        }
    }
}
