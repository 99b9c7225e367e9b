//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use qwalk_core::Coin;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `e^{i delta} [[e^{i a} cos t, e^{i b} sin t], [-e^{-i b} sin t, e^{-i a} cos t]]`.
pub fn random_unitary(rng: &mut StdRng) -> Coin {
    let t = rng.random_range(0.05..PI / 2.0 - 0.05);
    let (a, b, delta) = (rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI), rng.random_range(0.0..2.0 * PI));
    let g = Complex64::from_polar(1.0, delta);
    Coin::unitary(
        g * Complex64::from_polar(t.cos(), a),
        g * Complex64::from_polar(t.sin(), b),
        -g * Complex64::from_polar(t.sin(), -b),
        g * Complex64::from_polar(t.cos(), -a),
    )
    .unwrap()
}

/// Real orthogonal coin with `|a|` drawn from `range`, either determinant.
pub fn random_real_unitary(rng: &mut StdRng, range: std::ops::Range<f64>) -> Coin {
    let a = rng.random_range(range) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    let b = (1.0 - a * a).sqrt() * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
    if rng.random_bool(0.5) {
        Coin::real_unitary(a, b, b, -a).unwrap()
    } else {
        Coin::real_unitary(a, b, -b, a).unwrap()
    }
}

pub fn random_stochastic(rng: &mut StdRng) -> Coin {
    let a = rng.random_range(0.0..=1.0);
    let b = rng.random_range(0.0..=1.0);
    Coin::stochastic(a, b, 1.0 - a, 1.0 - b).unwrap()
}

/// Distribution of a correlated walk after `steps` moves, by summing the
/// Markov weight of every direction word. The first move sees a previous
/// direction drawn from `init`.
pub fn direction_word_distribution(coin: &Coin, init: [f64; 2], steps: u32) -> Vec<(i64, f64)> {
    let (a, b, c, d) = coin.probabilities().unwrap();
    let mut out = vec![0.0; 2 * steps as usize + 1];
    for word in 0u32..(1u32 << steps) {
        let mut weight = 0.0;
        for (prev0, w0) in [(1u32, init[0]), (0u32, init[1])] {
            let mut w = w0;
            let mut prev = prev0;
            for i in 0..steps {
                let next = word >> i & 1; // 1 = left
                w *= match (prev, next) {
                    (1, 1) => a,
                    (0, 1) => b,
                    (1, 0) => c,
                    _ => d,
                };
                prev = next;
            }
            weight += w;
        }
        let x = steps as i64 - 2 * word.count_ones() as i64;
        out[(x + steps as i64) as usize] += weight;
    }
    out.into_iter().enumerate().map(|(j, w)| (j as i64 - steps as i64, w)).collect()
}

/// Fixed-point arithmetic with `PREC` fractional bits.
const PREC: u64 = 1600;

fn fixed_from_f64(x: f64) -> BigInt {
    assert!(x.is_finite() && x >= 0.0);
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let shift = PREC as i64 + e;
    assert!(shift >= 0, "argument too small for the fixed-point oracle");
    BigInt::from(mant) << shift as usize
}

fn fixed_to_f64(v: &BigInt) -> f64 {
    // keep 200 fractional bits, then scale in two exact steps
    let head = v >> (PREC - 200) as usize;
    head.to_f64().unwrap() * 2f64.powi(-100) * 2f64.powi(-100)
}

fn fixed_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) >> PREC as usize
}

fn fixed_one() -> BigInt {
    BigInt::one() << PREC as usize
}

/// `sum_k s^k (x/2)^{2k+nu} / (k! (k+nu)!)` with `s = -1` for `J`, `+1` for `I`.
fn bessel_series(nu: u32, x: f64, alternating: bool) -> BigInt {
    let half = fixed_from_f64(x) >> 1usize;
    let y = fixed_mul(&half, &half);
    let mut term = fixed_one();
    for k in 1..=nu {
        term = fixed_mul(&term, &half) / BigInt::from(k);
    }
    let mut sum = BigInt::zero();
    let tiny = BigInt::one() << 8usize;
    let mut k: u64 = 0;
    loop {
        if alternating && k % 2 == 1 {
            sum -= &term;
        } else {
            sum += &term;
        }
        k += 1;
        term = fixed_mul(&term, &y) / BigInt::from(k * (k + nu as u64));
        if term.abs() < tiny && k as f64 > x {
            break;
        }
    }
    sum
}

fn exp_fixed(x: f64) -> BigInt {
    let xf = fixed_from_f64(x);
    let mut term = fixed_one();
    let mut sum = BigInt::zero();
    let tiny = BigInt::one() << 8usize;
    let mut k: u64 = 0;
    loop {
        sum += &term;
        k += 1;
        term = fixed_mul(&term, &xf) / BigInt::from(k);
        if term < tiny && k as f64 > x {
            break;
        }
    }
    sum
}

pub fn oracle_j(nu: u32, x: f64) -> f64 {
    fixed_to_f64(&bessel_series(nu, x, true))
}

/// `e^{-x} (I_0(x) + I_1(x))`.
pub fn oracle_scaled_i_sum(x: f64) -> f64 {
    let s = bessel_series(0, x, false) + bessel_series(1, x, false);
    let ratio = (s << PREC as usize) / exp_fixed(x);
    fixed_to_f64(&ratio)
}

pub fn oracle_i(nu: u32, x: f64) -> f64 {
    fixed_to_f64(&bessel_series(nu, x, false))
}

/// `1 - J_0(x)^2 - J_1(x)^2`, subtracted in fixed point.
pub fn oracle_j_bracket_complement(x: f64) -> f64 {
    let (a, b) = (bessel_series(0, x, true), bessel_series(1, x, true));
    fixed_to_f64(&(fixed_one() - fixed_mul(&a, &a) - fixed_mul(&b, &b)))
}

/// `1 - e^{-x} (I_0(x) + I_1(x))`, subtracted in fixed point.
pub fn oracle_scaled_i_sum_complement(x: f64) -> f64 {
    let s = bessel_series(0, x, false) + bessel_series(1, x, false);
    fixed_to_f64(&(fixed_one() - (s << PREC as usize) / exp_fixed(x)))
}
