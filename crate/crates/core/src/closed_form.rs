//! Combinatorial return-probability formulas.
//!
//! With `m = n/2`, the walks' return probabilities are built from the
//! squared-binomial sums
//!
//! ```text
//! K_n = |a|^{n-2} sum_{g=1}^{m} (s r^2)^{g-1} C(m-1, g-1)^2
//! L_n = |a|^{n-2} sum_{g=1}^{m} (s r^2)^{g-1} C(m-1, g-1)^2 / g
//! ```
//!
//! where `r = |b|/|a|` and `s = -1` for the quantum walk, `r = b/a` and
//! `s = +1` for the correlated random walk. Both are Laurent coefficients of
//! `Phi(z) = |a|^{n-2} (1 + c r z)^{m-1} (1 + c r / z)^{m-1}` (`c = i` or `1`):
//! `K = [z^0] Phi` and `L` follows from `[z^1] Phi`. On the unit circle
//! `|Phi| <= 1`, so averaging over roots of unity is loss-free, while the
//! direct quantum sum cancels catastrophically as `n` grows.

use num_complex::Complex64;

use crate::coin::{Coin, CoinKind};
use crate::error::{Result, WalkError};
use crate::extended::ExtF64;

/// Which evaluator backs the `K` / `L` sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SumRoute {
    Direct,
    #[default]
    Spectral,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormContext {
    n: u64,
    m: u64,
    kind: CoinKind,
    abs_a: f64,
    abs_b: f64,
    ratio: f64,
    x_scale: f64,
}

fn check_even(n: u64) -> Result<()> {
    if n % 2 == 1 || n < 2 {
        Err(WalkError::Parity(format!("closed forms need an even final time >= 2, got {n}")))
    } else {
        Ok(())
    }
}

impl ClosedFormContext {
    /// Context for a unitary coin; needs `0 < |a| < 1`.
    pub fn quantum(coin: &Coin, n: u64) -> Result<Self> {
        coin.expect_kind(CoinKind::Unitary)?;
        check_even(n)?;
        let (abs_a, abs_b) = (coin.a().norm(), coin.b().norm());
        if abs_a == 0.0 || abs_b == 0.0 {
            return Err(WalkError::DegenerateCoin(format!(
                "|a| = {abs_a}, |b| = {abs_b}; the sums need 0 < |a| < 1"
            )));
        }
        Ok(ClosedFormContext {
            n,
            m: n / 2,
            kind: CoinKind::Unitary,
            abs_a,
            abs_b,
            ratio: abs_b / abs_a,
            x_scale: 1.0 / (abs_a * abs_a),
        })
    }

    /// Context for a stochastic coin; needs `0 < a` and `0 < b`.
    pub fn classical(coin: &Coin, n: u64) -> Result<Self> {
        let (a, b, _, _) = coin.probabilities()?;
        check_even(n)?;
        if a <= 0.0 || b <= 0.0 {
            return Err(WalkError::DegenerateCoin(format!(
                "a = {a}, b = {b}; the sums need a, b > 0"
            )));
        }
        Ok(ClosedFormContext {
            n,
            m: n / 2,
            kind: CoinKind::Stochastic,
            abs_a: a,
            abs_b: b,
            ratio: b / a,
            x_scale: 1.0 / a,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn half_time(&self) -> u64 {
        self.m
    }

    pub fn abs_a(&self) -> f64 {
        self.abs_a
    }

    /// `A_n = |b|/|a|` (quantum) or `B_n = b/a` (classical).
    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    /// `1/|a|^2` (quantum) or `1/a` (classical); equals `(n/tau)^{2 alpha}`
    /// and `(n/theta)^beta` for the R-type families.
    pub fn x_scale(&self) -> f64 {
        self.x_scale
    }

    /// Whether the sum alternates (`(-A^2)^{g-1}`, quantum walk).
    pub fn signed(&self) -> bool {
        self.kind == CoinKind::Unitary
    }
}

/// Terms `|a|^{n-2} (s r^2)^{g-1} C(m-1, g-1)^2 w(g)` accumulated with an
/// extended exponent, each built from its predecessor by the ratio
/// `s r^2 ((m - g)/g)^2`.
fn direct_sum(ctx: &ClosedFormContext, weight: impl Fn(u64) -> f64) -> f64 {
    let m = ctx.m;
    let step = if ctx.signed() { -ctx.ratio * ctx.ratio } else { ctx.ratio * ctx.ratio };
    let mut term = ExtF64::new(ctx.abs_a).powi(ctx.n - 2);
    let mut sum = term * weight(1);
    for g in 1..m {
        let binom_ratio = (m - g) as f64 / g as f64;
        term = term * (binom_ratio * binom_ratio) * step;
        sum = sum + term * weight(g + 1);
    }
    sum.to_f64()
}

pub fn k_sum_direct(ctx: &ClosedFormContext) -> f64 {
    direct_sum(ctx, |_| 1.0)
}

pub fn l_sum_direct(ctx: &ClosedFormContext) -> f64 {
    direct_sum(ctx, |g| 1.0 / g as f64)
}

/// Smallest admissible grid: the next power of two `>= n + 2`.
pub fn default_grid_points(n: u64) -> usize {
    (n as usize + 2).next_power_of_two()
}

/// `[z^0] Phi` and `[z^1] Phi`, by averaging `Phi` over `points` roots of unity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaurentCoefficients {
    pub constant: Complex64,
    pub linear: Complex64,
}

/// On `z = e^{i phi}`, `Phi = (|a|^2 - |b|^2 + 2 i |a||b| cos phi)^{m-1}` for the
/// quantum walk and `(a^2 + b^2 + 2 a b cos phi)^{m-1}` for the classical one.
pub fn laurent_coefficients(ctx: &ClosedFormContext, points: usize) -> Result<LaurentCoefficients> {
    let required = ctx.n as usize + 2;
    if points < required {
        return Err(WalkError::Grid { points, n: ctx.n, required });
    }
    let (a, b) = (ctx.abs_a, ctx.abs_b);
    let base_for = |cos_phi: f64| -> Complex64 {
        if ctx.signed() {
            Complex64::new((a - b) * (a + b), 2.0 * a * b * cos_phi)
        } else {
            Complex64::new(a * a + b * b + 2.0 * a * b * cos_phi, 0.0)
        }
    };
    Ok(average_over_circle(points, ctx.m - 1, base_for))
}

fn average_over_circle(
    points: usize,
    power: u64,
    base_for: impl Fn(f64) -> Complex64,
) -> LaurentCoefficients {
    let mut constant = Complex64::new(0.0, 0.0);
    let mut linear = Complex64::new(0.0, 0.0);
    let step = std::f64::consts::TAU / points as f64;
    for k in 0..points {
        let (sin_phi, cos_phi) = (step * k as f64).sin_cos();
        let phi_val = powu(base_for(cos_phi), power);
        constant += phi_val;
        linear += phi_val * Complex64::new(cos_phi, -sin_phi);
    }
    let inv = 1.0 / points as f64;
    LaurentCoefficients { constant: constant * inv, linear: linear * inv }
}

fn powu(base: Complex64, mut k: u64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    while k > 0 {
        if k & 1 == 1 {
            acc *= b;
        }
        b *= b;
        k >>= 1;
    }
    acc
}

pub fn k_sum_spectral(ctx: &ClosedFormContext) -> Result<f64> {
    let coeffs = laurent_coefficients(ctx, default_grid_points(ctx.n))?;
    Ok(coeffs.constant.re)
}

/// `L` from `[z] Phi~ = [z] Phi + c r [z^0] Phi` with `Phi~ = (1 + c r z) Phi`:
/// `L = -2i/(n A) [z] Phi~` (quantum) or `2/(n B) [z] Phi~` (classical).
pub fn l_sum_spectral(ctx: &ClosedFormContext) -> Result<f64> {
    let coeffs = laurent_coefficients(ctx, default_grid_points(ctx.n))?;
    Ok(l_from_coefficients(ctx, &coeffs))
}

fn l_from_coefficients(ctx: &ClosedFormContext, coeffs: &LaurentCoefficients) -> f64 {
    let n = ctx.n as f64;
    let r = ctx.ratio;
    if ctx.signed() {
        let i = Complex64::new(0.0, 1.0);
        let shifted = coeffs.linear + i * r * coeffs.constant;
        (-2.0 * i / (n * r) * shifted).re
    } else {
        let shifted = coeffs.linear + r * coeffs.constant;
        (2.0 / (n * r) * shifted).re
    }
}

fn k_and_l(ctx: &ClosedFormContext, route: SumRoute) -> Result<(f64, f64)> {
    match route {
        SumRoute::Direct => Ok((k_sum_direct(ctx), l_sum_direct(ctx))),
        SumRoute::Spectral => {
            let coeffs = laurent_coefficients(ctx, default_grid_points(ctx.n))?;
            Ok((coeffs.constant.re, l_from_coefficients(ctx, &coeffs)))
        }
    }
}

const PROBABILITY_SLACK: f64 = 1e-9;

fn checked_probability(p: f64, what: &str) -> Result<f64> {
    if !(-PROBABILITY_SLACK..=1.0 + PROBABILITY_SLACK).contains(&p) {
        return Err(WalkError::domain(format!("{what} evaluated to {p}, outside [0, 1]")));
    }
    Ok(p.clamp(0.0, 1.0))
}

/// Return probability of the quantum walk from the two-sum formula
///
/// `P(X_n = 0) = |a|^2 A^4 { (n/2)^2 L^2 - n L K + K^2 / (1 - |a|^2) }`,
///
/// started from `(1/sqrt 2, i/sqrt 2)`, with `K`, `L` from the spectral route.
pub fn p0_via_lemma1(coin: &Coin, n: u64) -> Result<f64> {
    p0_via_lemma1_with(coin, n, SumRoute::Spectral)
}

pub fn p0_via_lemma1_with(coin: &Coin, n: u64, route: SumRoute) -> Result<f64> {
    let ctx = ClosedFormContext::quantum(coin, n)?;
    let (abs_a, abs_b) = (ctx.abs_a, ctx.abs_b);
    if abs_a >= 1.0 || abs_b >= 1.0 {
        return Err(WalkError::DegenerateCoin(format!("|a| = {abs_a} must lie in (0, 1)")));
    }
    let (k, l) = k_and_l(&ctx, route)?;
    let half = n as f64 / 2.0;
    let a4 = ctx.ratio.powi(4);
    // 1 - |a|^2 = |b|^2 for a unitary coin; the latter keeps its digits as |a| -> 1
    let bracket = half * half * l * l - n as f64 * l * k + k * k / (abs_b * abs_b);
    checked_probability(abs_a * abs_a * a4 * bracket, "two-sum formula")
}

/// Return probability of the quantum walk in the cancellation-free form
/// `|b|^2 (K^2 + (Im [z] Phi)^2)`, which the two-sum formula reduces to since
/// `(n/2) L = Im([z] Phi)/A + K`. Valid for every unitary coin, including
/// `|a| in {0, 1}`; zero for odd `n`.
pub fn p0_quantum_closed_form(coin: &Coin, n: u64) -> Result<f64> {
    coin.expect_kind(CoinKind::Unitary)?;
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    let (a, b) = (coin.a().norm(), coin.b().norm());
    let coeffs = average_over_circle(default_grid_points(n), n / 2 - 1, |cos_phi| {
        Complex64::new((a - b) * (a + b), 2.0 * a * b * cos_phi)
    });
    let p = b * b * (coeffs.constant.re.powi(2) + coeffs.linear.im.powi(2));
    checked_probability(p, "quantum closed form")
}

/// Return probability of the correlated random walk from `(1/2, 1/2)`,
///
/// `P(Y_n = 0) = a^{n/2-2} d^{n/2-2} { (n/4)(a+d) b c L + (1/2)(ac+bd)(ad-bc) K }`,
///
/// where `K`, `L` are the bare sums (no `a^{n-2}` prefactor). Holds for
/// symmetric coins (`a = d`, hence `b = c`) and `n >= 4`.
pub fn p0_via_lemma2(coin: &Coin, n: u64) -> Result<f64> {
    p0_via_lemma2_with(coin, n, SumRoute::Direct)
}

pub fn p0_via_lemma2_with(coin: &Coin, n: u64, route: SumRoute) -> Result<f64> {
    let (a, b, c, d) = coin.probabilities()?;
    check_even(n)?;
    if [a, b, c, d].iter().any(|&v| v <= 0.0 || v >= 1.0) {
        return Err(WalkError::DegenerateCoin(format!(
            "entries ({a}, {b}, {c}, {d}) must lie in (0, 1)"
        )));
    }
    if n < 4 {
        return Err(WalkError::SmallN(n));
    }
    if (a - d).abs() > crate::coin::COIN_TOLERANCE {
        return Err(WalkError::AsymmetricCoin { a, d });
    }
    let ctx = ClosedFormContext::classical(coin, n)?;
    let (k, l) = k_and_l(&ctx, route)?;
    let m = (n / 2) as i64;
    // a^{m-2} d^{m-2} / a^{n-2}: strips the prefactor carried by K and L
    let prefactor = (ExtF64::new(a).powi((m - 2) as u64) * ExtF64::new(d).powi((m - 2) as u64)
        * ExtF64::new(1.0 / a).powi((n - 2) as u64))
    .to_f64();
    let bracket = (n as f64 / 4.0) * (a + d) * b * c * l + 0.5 * (a * c + b * d) * (a * d - b * c) * k;
    checked_probability(prefactor * bracket, "two-sum formula")
}

/// Return probability of the correlated random walk from `(1/2, 1/2)` for
/// any stochastic coin, by counting direction runs. With `rho = bc/(ad)`,
///
/// `P = (ad)^{m-1} [ (c(a+b) + b(c+d))/2 S0 + (a(c+d) + d(a+b))/2 S1 ]`,
/// `S0 = sum_k rho^{k-1} C(m-1,k-1)^2`, `S1 = sum_k rho^{k-1} C(m-1,k-1) C(m-1,k-2)`.
///
/// `S0` counts paths that start and end with opposite moves, `S1` those that
/// start and end alike. Every term is positive, so there is no cancellation.
pub fn p0_classical_closed_form(coin: &Coin, n: u64) -> Result<f64> {
    let (a, b, c, d) = coin.probabilities()?;
    if n % 2 == 1 {
        return Ok(0.0);
    }
    if n == 0 {
        return Ok(1.0);
    }
    let m = n / 2;
    let start_left = (a + b) / 2.0;
    let start_right = (c + d) / 2.0;
    let opposite_ends = c * start_left + b * start_right;
    let same_ends = d * start_left + a * start_right;

    // term k of S0 and S1 scaled by (ad)^{m-1}: (ad)^{m-k} (bc)^{k-1} C(...)
    let (ad, bc) = (a * d, b * c);
    let (s0, s1) = if ad > 0.0 {
        let mut t0 = ExtF64::new(ad).powi(m - 1); // C(m-1,0)^2
        let mut s0 = t0;
        let mut s1 = ExtF64::ZERO;
        // t1_k = (ad)^{m-k}(bc)^{k-1} C(m-1,k-1) C(m-1,k-2), first at k = 2
        let mut t1 = ExtF64::new(ad).powi(m.saturating_sub(2)) * bc * (m - 1) as f64;
        for k in 2..=m {
            let j = (k - 1) as f64; // C(m-1, j) / C(m-1, j-1) = (m - j)/j
            let ratio = (m as f64 - j) / j;
            t0 = t0 * (bc / ad) * (ratio * ratio);
            s0 = s0 + t0;
            if k > 2 {
                // C(m-1,k-1)C(m-1,k-2) / C(m-1,k-2)C(m-1,k-3)
                let r1 = (m as f64 - j) / j;
                let r2 = (m as f64 - j + 1.0) / (j - 1.0);
                t1 = t1 * (bc / ad) * (r1 * r2);
            }
            s1 = s1 + t1;
        }
        (s0, s1)
    } else {
        // ad = 0: only the k = m terms survive
        let top = ExtF64::new(bc).powi(m - 1);
        (top, top * (m - 1) as f64)
    };
    let p = opposite_ends * s0.to_f64() + same_ends * s1.to_f64();
    checked_probability(p, "run-count formula")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical_walk::{classical_return_probabilities_along, SYMMETRIC_START};
    use crate::quantum_walk::{return_probabilities_along, InitialQubit};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn hadamard_ctx(n: u64) -> ClosedFormContext {
        ClosedFormContext::quantum(&Coin::hadamard(), n).unwrap()
    }

    #[test]
    fn two_step_sums_are_one() {
        let ctx = hadamard_ctx(2);
        assert_eq!(k_sum_direct(&ctx), 1.0);
        assert_eq!(l_sum_direct(&ctx), 1.0);
        assert_abs_diff_eq!(k_sum_spectral(&ctx).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l_sum_spectral(&ctx).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn hadamard_k_vanishes_for_even_half_time() {
        // Phi = (i cos phi)^{m-1} has no constant term when m - 1 is odd
        for n in [4u64, 8, 100, 1000] {
            assert_abs_diff_eq!(k_sum_spectral(&hadamard_ctx(n)).unwrap(), 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn four_step_sums_by_hand() {
        let coin = Coin::real_unitary(0.6, 0.8, 0.8, -0.6).unwrap();
        let ctx = ClosedFormContext::quantum(&coin, 4).unwrap();
        // |a|^2 (1 - A^2) = |a|^2 - |b|^2 and |a|^2 (1 - A^2 / 2)
        assert_abs_diff_eq!(k_sum_direct(&ctx), 0.36 - 0.64, epsilon = 1e-15);
        assert_abs_diff_eq!(l_sum_direct(&ctx), 0.36 * (1.0 - (0.8f64 / 0.6).powi(2) / 2.0), epsilon = 1e-15);
        assert_abs_diff_eq!(k_sum_spectral(&ctx).unwrap(), 0.36 - 0.64, epsilon = 1e-15);
    }

    #[test]
    fn direct_matches_spectral() {
        // the alternating sum loses digits to its largest term
        for n in [10u64, 24] {
            let ctx = hadamard_ctx(n);
            assert_abs_diff_eq!(k_sum_direct(&ctx), k_sum_spectral(&ctx).unwrap(), epsilon = 1e-12);
            assert_abs_diff_eq!(l_sum_direct(&ctx), l_sum_spectral(&ctx).unwrap(), epsilon = 1e-12);
        }
        let coin = Coin::real_unitary(0.95, (1.0f64 - 0.95 * 0.95).sqrt(), (1.0f64 - 0.95 * 0.95).sqrt(), -0.95).unwrap();
        // largest term is ~1e3 at n = 40, ~1e8 at n = 100
        for n in [20u64, 40] {
            let ctx = ClosedFormContext::quantum(&coin, n).unwrap();
            assert_abs_diff_eq!(k_sum_direct(&ctx), k_sum_spectral(&ctx).unwrap(), epsilon = 1e-11);
            assert_abs_diff_eq!(l_sum_direct(&ctx), l_sum_spectral(&ctx).unwrap(), epsilon = 1e-11);
        }
        let ctx = ClosedFormContext::quantum(&coin, 100).unwrap();
        assert_abs_diff_eq!(k_sum_spectral(&ctx).unwrap(), 0.10607544783070305, epsilon = 1e-14);
    }

    #[test]
    fn grid_too_small() {
        let ctx = hadamard_ctx(10);
        assert!(matches!(laurent_coefficients(&ctx, 11), Err(WalkError::Grid { .. })));
        assert!(laurent_coefficients(&ctx, 12).is_ok());
    }

    #[test]
    fn parity_errors() {
        assert!(matches!(ClosedFormContext::quantum(&Coin::hadamard(), 7), Err(WalkError::Parity(_))));
        assert!(matches!(p0_via_lemma1(&Coin::hadamard(), 3), Err(WalkError::Parity(_))));
    }

    #[test]
    fn lemma1_hadamard_small_n() {
        assert_abs_diff_eq!(p0_via_lemma1(&Coin::hadamard(), 2).unwrap(), 0.5, epsilon = 1e-14);
        let exact = return_probabilities_along(&Coin::hadamard(), InitialQubit::default(), 40).unwrap();
        for n in (2..=40u64).step_by(2) {
            let p = p0_via_lemma1(&Coin::hadamard(), n).unwrap();
            assert_abs_diff_eq!(p, exact[n as usize], epsilon = 1e-13);
            if n <= 20 {
                let q = p0_via_lemma1_with(&Coin::hadamard(), n, SumRoute::Direct).unwrap();
                assert_abs_diff_eq!(q, exact[n as usize], epsilon = 1e-13);
            }
            let s = p0_quantum_closed_form(&Coin::hadamard(), n).unwrap();
            assert_abs_diff_eq!(s, exact[n as usize], epsilon = 1e-14);
        }
    }

    #[test]
    fn lemma1_rejects_degenerate_coins() {
        let identity_like = Coin::real_unitary(1.0, 0.0, 0.0, -1.0).unwrap();
        assert!(matches!(p0_via_lemma1(&identity_like, 4), Err(WalkError::DegenerateCoin(_))));
        let flip = Coin::real_unitary(0.0, 1.0, 1.0, 0.0).unwrap();
        assert!(matches!(p0_via_lemma1(&flip, 4), Err(WalkError::DegenerateCoin(_))));
        // the reduced form handles both
        assert_eq!(p0_quantum_closed_form(&identity_like, 4).unwrap(), 0.0);
        assert_abs_diff_eq!(p0_quantum_closed_form(&flip, 4).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn lemma2_symmetric_coin() {
        let coin = Coin::stochastic(0.5, 0.5, 0.5, 0.5).unwrap();
        assert_abs_diff_eq!(p0_via_lemma2(&coin, 4).unwrap(), 6.0 / 16.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            p0_via_lemma2_with(&coin, 4, SumRoute::Spectral).unwrap(),
            6.0 / 16.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn lemma2_errors() {
        let sym = Coin::stochastic(0.3, 0.7, 0.7, 0.3).unwrap();
        assert!(matches!(p0_via_lemma2(&sym, 2), Err(WalkError::SmallN(2))));
        let asym = Coin::stochastic(0.3, 0.6, 0.7, 0.4).unwrap();
        assert!(matches!(p0_via_lemma2(&asym, 6), Err(WalkError::AsymmetricCoin { .. })));
        let edge = Coin::stochastic(1.0, 0.0, 0.0, 1.0).unwrap();
        assert!(matches!(p0_via_lemma2(&edge, 6), Err(WalkError::DegenerateCoin(_))));
        assert!(matches!(p0_via_lemma2(&Coin::hadamard(), 6), Err(WalkError::Kind { .. })));
    }

    #[test]
    fn run_count_formula_matches_dp() {
        for (a, b) in [(0.3, 0.6), (0.9, 0.05), (0.5, 0.5), (1.0, 0.2), (0.0, 1.0), (0.4, 1.0)] {
            let coin = Coin::stochastic(a, b, 1.0 - a, 1.0 - b).unwrap();
            let dp = classical_return_probabilities_along(&coin, SYMMETRIC_START, 30).unwrap();
            for n in 0..=30u64 {
                let p = p0_classical_closed_form(&coin, n).unwrap();
                assert_abs_diff_eq!(p, dp[n as usize], epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn run_count_reduces_to_lemma2() {
        let coin = Coin::stochastic(0.37, 0.63, 0.63, 0.37).unwrap();
        for n in (4..=60u64).step_by(2) {
            assert_abs_diff_eq!(
                p0_classical_closed_form(&coin, n).unwrap(),
                p0_via_lemma2(&coin, n).unwrap(),
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn classical_direct_matches_spectral() {
        let coin = Coin::stochastic(0.2, 0.8, 0.8, 0.2).unwrap();
        for n in [10u64, 100, 300] {
            let ctx = ClosedFormContext::classical(&coin, n).unwrap();
            assert_relative_eq!(k_sum_direct(&ctx), k_sum_spectral(&ctx).unwrap(), max_relative = 1e-10);
            assert_relative_eq!(l_sum_direct(&ctx), l_sum_spectral(&ctx).unwrap(), max_relative = 1e-10);
        }
    }
}
