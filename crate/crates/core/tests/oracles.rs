//! Cross-checks of every evaluation route against independent oracles.

mod common;

use approx::assert_abs_diff_eq;
use num_complex::Complex64;

use common::*;
use qwalk_core::classical_walk::{classical_return_probabilities_along, evolve_classical, SYMMETRIC_START};
use qwalk_core::closed_form::{
    p0_classical_closed_form, p0_quantum_closed_form, p0_via_lemma1, p0_via_lemma1_with, p0_via_lemma2, SumRoute,
};
use qwalk_core::coin::{make_coin, Coin, Family, FamilySpec};
use qwalk_core::quantum_walk::{
    distribution, evolve, path_sum_bruteforce, return_probabilities_along, return_probability_exact, InitialQubit,
};
use qwalk_core::special_functions::{
    bessel_i_sequence, bessel_j, bessel_j_bracket, bessel_j_bracket_complement, j0, j1, scaled_bessel_i_sum,
    scaled_bessel_i_sum_complement, BesselOrder,
};

#[test]
fn fixed_point_oracle_sanity() {
    assert_abs_diff_eq!(oracle_j(0, 1.0), 0.7651976865579666, epsilon = 1e-16);
    assert_abs_diff_eq!(oracle_j(1, 1.0), 0.44005058574493352, epsilon = 1e-16);
    assert_abs_diff_eq!(oracle_scaled_i_sum(1.0), 0.67367002294334889, epsilon = 1e-16);
    assert_eq!(oracle_j(0, 0.0), 1.0);
}

#[test]
fn hadamard_two_steps_by_hand() {
    // QP + PQ acting on (1/sqrt 2, i/sqrt 2)
    let p = path_sum_bruteforce(&Coin::hadamard(), InitialQubit::default(), 2, 0).unwrap();
    assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
}

#[test]
fn path_sums_match_evolution_for_complex_coins() {
    let mut rng = rng(11);
    for _ in 0..10 {
        let coin = random_unitary(&mut rng);
        let theta = rand::Rng::random_range(&mut rng, 0.0..std::f64::consts::TAU);
        let init = InitialQubit::new(
            Complex64::new(theta.cos(), 0.0),
            Complex64::from_polar(theta.sin(), 1.3),
        )
        .unwrap();
        for k in [0u64, 1, 5, 14] {
            let dist = distribution(&evolve(&coin, init, k).unwrap());
            for (&x, &p) in &dist {
                assert_abs_diff_eq!(path_sum_bruteforce(&coin, init, k, x).unwrap(), p, epsilon = 1e-12);
            }
        }
    }
}

#[test]
fn two_sum_formula_holds_for_complex_coins() {
    let mut rng = rng(5);
    for _ in 0..20 {
        let coin = random_unitary(&mut rng);
        let exact = return_probabilities_along(&coin, InitialQubit::default(), 120).unwrap();
        for n in (2..=120u64).step_by(2) {
            assert_abs_diff_eq!(p0_via_lemma1(&coin, n).unwrap(), exact[n as usize], epsilon = 1e-9);
            assert_abs_diff_eq!(p0_quantum_closed_form(&coin, n).unwrap(), exact[n as usize], epsilon = 1e-12);
        }
    }
}

#[test]
fn direct_sums_agree_at_small_n() {
    let mut rng = rng(8);
    for _ in 0..20 {
        let coin = random_real_unitary(&mut rng, 0.3..0.95);
        for n in (2..=16u64).step_by(2) {
            let direct = p0_via_lemma1_with(&coin, n, SumRoute::Direct).unwrap();
            let spectral = p0_via_lemma1_with(&coin, n, SumRoute::Spectral).unwrap();
            assert_abs_diff_eq!(direct, spectral, epsilon = 1e-10);
        }
    }
}

#[test]
fn run_count_formula_matches_word_enumeration() {
    let mut rng = rng(3);
    for _ in 0..30 {
        let coin = random_stochastic(&mut rng);
        for k in (0..=12u32).step_by(2) {
            let p0 = direction_word_distribution(&coin, SYMMETRIC_START, k)
                .into_iter()
                .find(|&(x, _)| x == 0)
                .unwrap()
                .1;
            assert_abs_diff_eq!(p0_classical_closed_form(&coin, k as u64).unwrap(), p0, epsilon = 1e-13);
        }
    }
}

#[test]
fn symmetric_formula_matches_dp_for_random_symmetric_coins() {
    let mut rng = rng(4);
    for _ in 0..30 {
        let a = rand::Rng::random_range(&mut rng, 0.02..0.98);
        let coin = Coin::stochastic(a, 1.0 - a, 1.0 - a, a).unwrap();
        let dp = classical_return_probabilities_along(&coin, SYMMETRIC_START, 300).unwrap();
        for n in (4..=300u64).step_by(8) {
            assert_abs_diff_eq!(p0_via_lemma2(&coin, n).unwrap(), dp[n as usize], epsilon = 1e-12);
        }
    }
}

#[test]
fn family_routes_agree_at_moderate_n() {
    for family in [Family::QwR, Family::QwK] {
        for (e, s) in [(0.5, 1.0), (1.0, 0.5), (2.0, 3.0)] {
            for n in [10u64, 64, 300] {
                let spec = FamilySpec::new(family, e, s, n).unwrap();
                let coin = make_coin(&spec).unwrap();
                assert_abs_diff_eq!(
                    return_probability_exact(&spec).unwrap(),
                    p0_quantum_closed_form(&coin, n).unwrap(),
                    epsilon = 1e-12
                );
            }
        }
    }
    for (e, s) in [(0.5, 1.0), (1.0, 0.5), (2.0, 3.0)] {
        for n in [10u64, 64, 300] {
            let spec = FamilySpec::new(Family::CrwK, e, s, n).unwrap();
            let coin = make_coin(&spec).unwrap();
            let dp = evolve_classical(&coin, SYMMETRIC_START, n).unwrap().probability_at(0);
            assert_abs_diff_eq!(p0_classical_closed_form(&coin, n).unwrap(), dp, epsilon = 1e-13);
        }
    }
}

#[test]
fn bessel_against_fixed_point_series() {
    for i in 0..=60 {
        let x = 0.37 * i as f64 + 0.01;
        for (order, nu) in [(BesselOrder::Zero, 0), (BesselOrder::One, 1)] {
            let got = bessel_j(order, x).unwrap().value;
            let want = oracle_j(nu, x);
            assert!((got - want).abs() <= 1e-13 + 1e-11 * want.abs(), "J_{nu}({x}): {got} vs {want}");
        }
        let got = scaled_bessel_i_sum(x);
        let want = oracle_scaled_i_sum(x);
        assert!((got / want - 1.0).abs() < 1e-13, "scaled I sum at {x}");
    }
}

#[test]
fn complements_match_oracle() {
    for x in [1e-6, 1e-3, 0.1, 0.5, 0.99, 1.5, 7.0] {
        let want = oracle_j_bracket_complement(x);
        assert!((bessel_j_bracket_complement(x) / want - 1.0).abs() < 1e-12, "{x}");
        let want = oracle_scaled_i_sum_complement(x);
        assert!((scaled_bessel_i_sum_complement(x) / want - 1.0).abs() < 1e-12, "{x}");
    }
}

#[test]
fn bracket_stays_in_unit_interval() {
    for i in 1..2000 {
        let x = i as f64 * 0.25;
        let v = bessel_j_bracket(x);
        assert!(v > 0.0 && v <= 1.0, "{x}");
        let w = scaled_bessel_i_sum(x);
        assert!(w > 0.0 && w <= 1.0, "{x}");
    }
    assert!((bessel_j_bracket(500.0) * std::f64::consts::PI * 500.0 / 2.0 - 1.0).abs() < 0.01);
}

#[test]
fn modified_sequence_matches_series() {
    let seq = bessel_i_sequence(6, 2.5).unwrap();
    for (m, v) in seq.iter().enumerate() {
        assert!((v / oracle_i(m as u32, 2.5) - 1.0).abs() < 1e-12, "I_{m}");
    }
}

#[test]
fn j_pair_sign_symmetry() {
    for x in [0.3, 4.0, 30.0] {
        assert_eq!(j0(-x), j0(x));
        assert_eq!(j1(-x), -j1(x));
    }
}
