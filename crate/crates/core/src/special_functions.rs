//! Bessel functions `J_0`, `J_1` and exponentially scaled modified Bessel
//! functions `e^{-x} I_0`, `e^{-x} I_1` for real `x >= 0`.
//!
//! Below [`SERIES_CROSSOVER`] the ascending power series is summed in
//! double-double arithmetic, which keeps ~1e-20 absolute accuracy even
//! where the alternating `J` series cancels by nine digits. Above it the
//! Hankel asymptotic expansion is truncated at its smallest term, which is
//! below `e^{-2x}`.

use std::f64::consts::PI;

use crate::error::{Result, WalkError};

/// Argument at which evaluation switches from series to asymptotic expansion.
pub const SERIES_CROSSOVER: f64 = 25.0;

/// Largest argument for which the unscaled `I_k(x)` is representable.
pub const MAX_UNSCALED_I_ARGUMENT: f64 = 709.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    Zero,
    One,
}

impl BesselOrder {
    fn nu(self) -> f64 {
        match self {
            BesselOrder::Zero => 0.0,
            BesselOrder::One => 1.0,
        }
    }
}

impl TryFrom<u32> for BesselOrder {
    type Error = WalkError;

    fn try_from(order: u32) -> Result<Self> {
        match order {
            0 => Ok(BesselOrder::Zero),
            1 => Ok(BesselOrder::One),
            k => Err(WalkError::domain(format!("only orders 0 and 1 are supported, got {k}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselMethod {
    Series,
    AsymptoticExpansion,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselResult {
    pub value: f64,
    pub method: BesselMethod,
}

fn method_for(x: f64) -> BesselMethod {
    if x <= SERIES_CROSSOVER {
        BesselMethod::Series
    } else {
        BesselMethod::AsymptoticExpansion
    }
}

fn check_argument(x: f64) -> Result<()> {
    if x.is_nan() || x < 0.0 {
        Err(WalkError::domain(format!("Bessel argument must be >= 0, got {x}")))
    } else {
        Ok(())
    }
}

/// Double-double number `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    fn from_f64(v: f64) -> Self {
        Dd { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        Dd { hi: s, lo: b - (s - a) }
    }

    fn square(v: f64) -> Dd {
        let p = v * v;
        Dd { hi: p, lo: v.mul_add(v, -p) }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        let t = Dd::two_sum(self.lo, other.lo);
        let s = Dd::quick_two_sum(s.hi, s.lo + t.hi);
        Dd::quick_two_sum(s.hi, s.lo + t.lo)
    }

    fn mul(self, other: Dd) -> Dd {
        let p = self.hi * other.hi;
        let err = self.hi.mul_add(other.hi, -p);
        let lo = err + (self.hi * other.lo + self.lo * other.hi);
        Dd::quick_two_sum(p, lo)
    }

    fn div_f64(self, v: f64) -> Dd {
        let q1 = self.hi / v;
        // remainder self - q1 * v, exact product via fma
        let p = q1 * v;
        let perr = q1.mul_add(v, -p);
        let r = Dd::two_sum(self.hi, -p);
        let rem = (r.hi + (r.lo - perr + self.lo)) / v;
        Dd::quick_two_sum(q1, rem)
    }

    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

/// `sum_k s^k (x^2/4)^k / (k! (k + order)!)`, with `s = -1` for `J`, `+1` for `I`.
fn ascending_series(x: f64, order: u32, alternating: bool) -> Dd {
    let mut q = Dd::square(x).div_f64(4.0);
    if alternating {
        q = q.neg();
    }
    let mut term = Dd::from_f64(1.0);
    for k in 1..=order {
        term = term.div_f64(k as f64);
    }
    let mut sum = term;
    let mut k = 1u32;
    loop {
        term = term.mul(q).div_f64((k as f64) * ((k + order) as f64));
        sum = sum.add(term);
        if term.hi.abs() <= 1e-34 * sum.hi.abs().max(1e-300) || k > 500 {
            break;
        }
        k += 1;
    }
    sum
}

/// Hankel coefficients `a_k(nu) = prod_{j=1..k} (4 nu^2 - (2j - 1)^2) / (k! 8^k)`,
/// summed as `sum_k sign_k a_k / x^k` until terms stop shrinking.
fn hankel_terms(nu: f64, x: f64) -> Vec<f64> {
    let mu = 4.0 * nu * nu;
    let mut terms = vec![1.0];
    let mut term = 1.0f64;
    for k in 1..200 {
        let odd = (2 * k - 1) as f64;
        let next = term * (mu - odd * odd) / (8.0 * k as f64 * x);
        if next.abs() >= term.abs() || next == 0.0 {
            break;
        }
        term = next;
        terms.push(term);
        if term.abs() < 1e-18 {
            break;
        }
    }
    terms
}

fn j_asymptotic(order: BesselOrder, x: f64) -> f64 {
    let terms = hankel_terms(order.nu(), x);
    // P = a0 - a2 + a4 - ..., Q = a1 - a3 + a5 - ...
    let (mut p, mut q) = (0.0, 0.0);
    for (k, t) in terms.iter().enumerate().rev() {
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * t;
        } else {
            q += sign * t;
        }
    }
    let (s, c) = x.sin_cos();
    // cos/sin of x - pi/4 (order 0) and x - 3pi/4 (order 1), expanded so that
    // x is never reduced against a rounded multiple of pi
    let (cos_chi, sin_chi) = match order {
        BesselOrder::Zero => (c + s, s - c),
        BesselOrder::One => (s - c, -(s + c)),
    };
    (p * cos_chi - q * sin_chi) / (PI * x).sqrt()
}

fn scaled_i_asymptotic(order: BesselOrder, x: f64) -> f64 {
    let terms = hankel_terms(order.nu(), x);
    let mut sum = 0.0;
    for (k, t) in terms.iter().enumerate().rev() {
        sum += if k % 2 == 0 { *t } else { -*t };
    }
    sum / (2.0 * PI * x).sqrt()
}

fn j_value(order: BesselOrder, x: f64) -> f64 {
    match method_for(x) {
        BesselMethod::Series => match order {
            BesselOrder::Zero => ascending_series(x, 0, true).to_f64(),
            BesselOrder::One => ascending_series(x, 1, true).to_f64() * (x / 2.0),
        },
        BesselMethod::AsymptoticExpansion => j_asymptotic(order, x),
    }
}

fn scaled_i_value(order: BesselOrder, x: f64) -> f64 {
    match method_for(x) {
        BesselMethod::Series => {
            let series = match order {
                BesselOrder::Zero => ascending_series(x, 0, false).to_f64(),
                BesselOrder::One => ascending_series(x, 1, false).to_f64() * (x / 2.0),
            };
            series * (-x).exp()
        }
        BesselMethod::AsymptoticExpansion => scaled_i_asymptotic(order, x),
    }
}

/// Bessel function of the first kind `J_order(x)`.
pub fn bessel_j(order: BesselOrder, x: f64) -> Result<BesselResult> {
    check_argument(x)?;
    Ok(BesselResult { value: j_value(order, x), method: method_for(x) })
}

pub fn j0(x: f64) -> f64 {
    j_value(BesselOrder::Zero, x.abs())
}

pub fn j1(x: f64) -> f64 {
    x.signum() * j_value(BesselOrder::One, x.abs())
}

/// Modified Bessel function `I_order(x)`; overflows past [`MAX_UNSCALED_I_ARGUMENT`].
pub fn bessel_i(order: BesselOrder, x: f64) -> Result<BesselResult> {
    check_argument(x)?;
    if x > MAX_UNSCALED_I_ARGUMENT {
        return Err(WalkError::Overflow(format!(
            "I_k({x}) exceeds the double range; use the scaled form"
        )));
    }
    let value = scaled_i_value(order, x) * x.exp();
    Ok(BesselResult { value, method: method_for(x) })
}

/// `e^{-x} I_order(x)`.
pub fn bessel_i_scaled(order: BesselOrder, x: f64) -> Result<BesselResult> {
    check_argument(x)?;
    Ok(BesselResult { value: scaled_i_value(order, x), method: method_for(x) })
}

/// `e^{-x} (I_0(x) + I_1(x))`: in `(0, 1]`, decreasing, never overflows.
pub fn scaled_bessel_i_sum(x: f64) -> f64 {
    let x = x.max(0.0);
    scaled_i_value(BesselOrder::Zero, x) + scaled_i_value(BesselOrder::One, x)
}

/// `1 - e^{-x} (I_0(x) + I_1(x))`, accurate for small `x`.
///
/// Uses `e^x = I_0 + 2 sum_{m>=1} I_m`, so the complement is
/// `e^{-x} (I_1 + 2 sum_{m>=2} I_m)`, a sum of positive terms.
pub fn scaled_bessel_i_sum_complement(x: f64) -> f64 {
    let x = x.max(0.0);
    if x > 1.0 {
        return 1.0 - scaled_bessel_i_sum(x);
    }
    let mut sum = ascending_series(x, 1, false).to_f64() * (x / 2.0);
    let mut power = x / 2.0;
    for m in 2..60u32 {
        power *= x / 2.0;
        let term = 2.0 * power * ascending_series(x, m, false).to_f64();
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
    }
    sum * (-x).exp()
}

/// `J_0(x)^2 + J_1(x)^2`.
pub fn bessel_j_bracket(x: f64) -> f64 {
    let (a, b) = (j0(x), j1(x));
    a * a + b * b
}

/// `1 - J_0(x)^2 - J_1(x)^2`, accurate for small `x`.
///
/// Neumann's identity `J_0^2 + 2 sum_{k>=1} J_k^2 = 1` turns the complement
/// into `J_1^2 + 2 sum_{k>=2} J_k^2`.
pub fn bessel_j_bracket_complement(x: f64) -> f64 {
    let x = x.abs();
    if x > 1.0 {
        return 1.0 - bessel_j_bracket(x);
    }
    let jk = |k: u32| -> f64 {
        (x / 2.0).powi(k as i32) * ascending_series(x, k, true).to_f64()
    };
    let j_1 = jk(1);
    let mut sum = j_1 * j_1;
    for k in 2..40 {
        let v = jk(k);
        let term = 2.0 * v * v;
        sum += term;
        if term <= 1e-18 * sum {
            break;
        }
    }
    sum
}

/// `I_0(x), ..., I_max_order(x)` by Miller's backward recurrence
/// `I_{k-1} = I_{k+1} + (2k/x) I_k`, normalised against `I_0(x)`.
pub fn bessel_i_sequence(max_order: usize, x: f64) -> Result<Vec<f64>> {
    let i0 = bessel_i(BesselOrder::Zero, x)?.value;
    if x == 0.0 {
        let mut out = vec![0.0; max_order + 1];
        out[0] = 1.0;
        return Ok(out);
    }
    let start = max_order + 30 + (2.0 * x) as usize;
    let mut values = vec![0.0; start + 2];
    values[start] = 1e-300;
    for k in (1..=start).rev() {
        values[k - 1] = values[k + 1] + (2.0 * k as f64 / x) * values[k];
        if values[k - 1] > 1e250 {
            for v in values.iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    let norm = i0 / values[0];
    Ok(values.into_iter().take(max_order + 1).map(|v| v * norm).collect())
}
