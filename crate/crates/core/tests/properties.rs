use mtvlab_core::finite_sums::{
    finite_sum, finite_sum_outer_first, finite_sum_sequence, h_alpha, FiniteSumKind,
};
use mtvlab_core::series::a_m_series;
use mtvlab_core::words::{
    index_from_word, shuffle, shuffle_monomials, word_from_index, y_power_decompose,
    y_power_reconstruct, Letter,
};
use mtvlab_core::{EvalConfig, Index, Word, WordPoly};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn word_strategy(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(prop_oneof![Just(Letter::X), Just(Letter::Y)], 0..=max_len)
        .prop_map(Word::new)
}

fn index_strategy(max_depth: usize, max_part: u32) -> impl Strategy<Value = Index> {
    prop::collection::vec(1..=max_part, 1..=max_depth).prop_map(|v| Index::new(v).unwrap())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Direct enumeration of the defining nested sums over all tuples below `n`.
fn brute_force(kind: FiniteSumKind, k: &Index, n: u64) -> BigRational {
    let parts = k.parts();
    let r = parts.len();
    let mut total = BigRational::zero();
    let mut tuple = vec![1u64; r];
    loop {
        let ok = (0..r).all(|i| {
            let next = if i + 1 < r { tuple[i + 1] } else { n };
            let lt = match kind {
                FiniteSumKind::Zeta => i + 1 < r,
                FiniteSumKind::ZetaStar => false,
                FiniteSumKind::T => (i + 1) % 2 == 0,
                FiniteSumKind::S => (i + 1) % 2 == 1,
            };
            if lt {
                tuple[i] < next
            } else {
                tuple[i] <= next
            }
        });
        if ok {
            let mut term = BigRational::one();
            for i in 0..r {
                let v = tuple[i];
                let base = match kind {
                    FiniteSumKind::Zeta | FiniteSumKind::ZetaStar => v,
                    FiniteSumKind::T => if i % 2 == 0 { 2 * v - 1 } else { 2 * v },
                    FiniteSumKind::S => if i % 2 == 0 { 2 * v } else { 2 * v - 1 },
                };
                let scale = if matches!(kind, FiniteSumKind::T | FiniteSumKind::S) { 2 } else { 1 };
                term *= rat(scale, 1) / BigRational::from_integer(BigInt::from(base).pow(parts[i]));
            }
            total += term;
        }
        // odometer over 1..=n
        let mut i = 0;
        loop {
            if i == r {
                return total;
            }
            tuple[i] += 1;
            if tuple[i] <= n {
                break;
            }
            tuple[i] = 1;
            i += 1;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shuffle_is_commutative(u in word_strategy(6), v in word_strategy(6)) {
        prop_assert_eq!(shuffle_monomials(&u, &v), shuffle_monomials(&v, &u));
    }

    #[test]
    fn shuffle_is_associative(u in word_strategy(4), v in word_strategy(4), w in word_strategy(4)) {
        let (pu, pv, pw) = (WordPoly::monomial(u), WordPoly::monomial(v), WordPoly::monomial(w));
        prop_assert_eq!(shuffle(&shuffle(&pu, &pv), &pw), shuffle(&pu, &shuffle(&pv, &pw)));
    }

    #[test]
    fn shuffle_preserves_total_count(u in word_strategy(6), v in word_strategy(6)) {
        // the number of interleavings is binom(|u| + |v|, |u|)
        let (a, b) = (u.len() as u64, v.len() as u64);
        let expected = (1..=a).fold(1u64, |acc, i| acc * (b + i) / i);
        let total = shuffle_monomials(&u, &v).total_multiplicity();
        prop_assert_eq!(total, BigRational::from_integer(BigInt::from(expected)));
    }

    #[test]
    fn empty_word_is_the_unit(u in word_strategy(8)) {
        prop_assert_eq!(shuffle_monomials(&u, &Word::empty()), WordPoly::monomial(u));
    }

    #[test]
    fn y_power_decomposition_reconstructs(w in word_strategy(6)) {
        // words of H1 are empty or begin with y
        let w = if w.is_empty() { w } else { Word::new(vec![Letter::Y]).concat(&w) };
        let parts = y_power_decompose(&w).unwrap();
        prop_assert_eq!(y_power_reconstruct(&parts), WordPoly::monomial(w));
        for (_, poly) in &parts {
            for (word, _) in poly.terms() {
                prop_assert!(word.is_empty() || *word.letters().last().unwrap() == Letter::X);
            }
        }
    }

    #[test]
    fn index_word_round_trip(k in index_strategy(5, 4)) {
        let w = word_from_index(&k);
        prop_assert_eq!(w.len() as u32, k.weight());
        prop_assert_eq!(index_from_word(&w).unwrap(), k);
    }

    #[test]
    fn finite_sums_match_enumeration(k in index_strategy(3, 3), n in 0u64..7) {
        for kind in [FiniteSumKind::Zeta, FiniteSumKind::ZetaStar, FiniteSumKind::T, FiniteSumKind::S] {
            let fast = finite_sum(kind, &k, n);
            prop_assert_eq!(&fast, &brute_force(kind, &k, n), "{} {} {}", kind, k, n);
            prop_assert_eq!(&fast, &finite_sum_outer_first(kind, &k, n));
        }
    }

    #[test]
    fn sequence_agrees_with_single_bounds(k in index_strategy(4, 3), n_max in 0u64..12) {
        for kind in [FiniteSumKind::Zeta, FiniteSumKind::ZetaStar, FiniteSumKind::T, FiniteSumKind::S] {
            let seq = finite_sum_sequence(kind, &k, n_max);
            prop_assert_eq!(seq.len() as u64, n_max + 1);
            for (n, v) in seq.iter().enumerate() {
                prop_assert_eq!(v, &finite_sum_outer_first(kind, &k, n as u64), "{} {} {}", kind, k, n);
            }
        }
    }

    #[test]
    fn series_matches_truncated_sum(k in index_strategy(3, 3), z in 0.05f64..0.4) {
        // with z <= 0.4 the terms beyond n = 80 are below 1e-30
        let cfg = EvalConfig::default();
        for m in [1u32, 2] {
            let v = a_m_series(m, &k, z, &cfg).unwrap().value;
            let parts = k.parts();
            let r = parts.len();
            let n_max = 80u64;
            let mut layer = vec![0.0f64; n_max as usize + 1];
            for (i, &kp) in parts.iter().enumerate() {
                let mut next = vec![0.0f64; n_max as usize + 1];
                let mut acc = if i == 0 { 1.0 } else { 0.0 };
                for n in 1..=n_max {
                    let residue_ok = (n as u32 % m) == ((i as u32 + 1) % m);
                    if residue_ok {
                        next[n as usize] = acc / (n as f64).powi(kp as i32);
                    }
                    if i > 0 {
                        acc += layer[n as usize];
                    }
                }
                layer = next;
            }
            let direct: f64 = (1..=n_max)
                .map(|n| layer[n as usize] * z.powi(n as i32))
                .sum::<f64>() * (m as f64).powi(r as i32);
            prop_assert!((v - direct).abs() <= 1e-13 * (1.0 + direct.abs()), "m={} k={} z={}: {} vs {}", m, k, z, v, direct);
        }
    }
}

#[test]
fn harmonic_numbers_at_minus_one_half() {
    let one = Index::new(vec![1]).unwrap();
    let alpha = rat(-1, 2);
    for n in 0..=100 {
        assert_eq!(finite_sum(FiniteSumKind::T, &one, n), h_alpha(n, &alpha).unwrap());
    }
}

#[test]
fn t_and_s_recurrences_hold_exactly() {
    let two = BigRational::from_integer(BigInt::from(2));
    for k in mtvlab_core::index::compositions(5, 3) {
        let r = k.depth();
        let head = k.head(r - 1);
        let last = k.parts()[r - 1];
        let mut t_acc = BigRational::zero();
        let mut s_acc = BigRational::zero();
        for n in 1..=20u64 {
            let odd = BigRational::from_integer(BigInt::from(2 * n - 1).pow(last)).recip();
            let even = BigRational::from_integer(BigInt::from(2 * n).pow(last)).recip();
            // T_n(k_{odd depth}) includes j = n; T_n(k_{even depth}) stops at n - 1, S the other way
            if r % 2 == 1 {
                t_acc += &two * finite_sum(FiniteSumKind::T, &head, n) * odd;
                assert_eq!(finite_sum(FiniteSumKind::T, &k, n), t_acc);
                assert_eq!(finite_sum(FiniteSumKind::S, &k, n), s_acc);
                s_acc += &two * finite_sum(FiniteSumKind::S, &head, n) * even;
            } else {
                assert_eq!(finite_sum(FiniteSumKind::T, &k, n), t_acc);
                t_acc += &two * finite_sum(FiniteSumKind::T, &head, n) * even;
                s_acc += &two * finite_sum(FiniteSumKind::S, &head, n) * odd;
                assert_eq!(finite_sum(FiniteSumKind::S, &k, n), s_acc);
            }
        }
    }
}
