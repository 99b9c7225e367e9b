//! Large-time return probabilities and their limiting constants.
//!
//! Every function takes the physical final time `T` (even) and uses the
//! half time `n = T/2` for the scaling laws. With `g = tau^alpha T^{1-alpha}`
//! and `h = theta^beta T^{1-beta}`:
//!
//! | family | `p_T(0)` |
//! |--------|----------|
//! | QW_R   | `J_0(g)^2 + J_1(g)^2` |
//! | QW_K   | `(tau/T)^{2 alpha} (J_0(g)^2 + J_1(g)^2)` |
//! | CRW_R  | `e^{-h} (I_0(h) + I_1(h))` |
//! | CRW_K  | `(theta/T)^beta e^{-h} (I_0(h) + I_1(h))` |

use std::fmt;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::coin::{Family, FamilySpec};
use crate::error::{Result, WalkError};
use crate::special_functions::{
    bessel_j_bracket, bessel_j_bracket_complement, scaled_bessel_i_sum, scaled_bessel_i_sum_complement,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Sub,
    Critical,
    Super,
}

impl Regime {
    pub const ALL: [Regime; 3] = [Regime::Sub, Regime::Critical, Regime::Super];

    pub fn from_exponent(exponent: f64) -> Regime {
        if exponent < 1.0 {
            Regime::Sub
        } else if exponent == 1.0 {
            Regime::Critical
        } else {
            Regime::Super
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Sub => "sub",
            Regime::Critical => "critical",
            Regime::Super => "super",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which quantity the scaling law multiplies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Observable {
    /// `p`
    Return,
    /// `1 - p`
    Complement,
}

/// `n^{n_exponent} * observable -> constant` as `n = T/2 -> infinity`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitConstant {
    pub regime: Regime,
    pub n_exponent: f64,
    pub observable: Observable,
    pub constant: f64,
}

impl LimitConstant {
    /// Exponent of `T` in the decay of the observable, i.e. `-n_exponent`.
    pub fn decay_exponent(&self) -> f64 {
        -self.n_exponent
    }

    /// `(T/2)^{n_exponent}` times `p` or `1 - p`.
    pub fn scaled(&self, final_time: u64, p: f64, complement: f64) -> f64 {
        let n = final_time as f64 / 2.0;
        let obs = match self.observable {
            Observable::Return => p,
            Observable::Complement => complement,
        };
        if self.n_exponent == 0.0 {
            obs
        } else {
            (self.n_exponent * n.ln()).exp() * obs
        }
    }
}

/// The limit for a family in a regime; the regime has to match the exponent.
pub fn limit_constant(family: Family, regime: Regime, exponent: f64, scale: f64) -> Result<LimitConstant> {
    if !(scale > 0.0) || !(exponent >= 0.0) || !scale.is_finite() || !exponent.is_finite() {
        return Err(WalkError::domain(format!(
            "need exponent >= 0 and scale > 0, got ({exponent}, {scale})"
        )));
    }
    let actual = Regime::from_exponent(exponent);
    if actual != regime {
        return Err(WalkError::Regime(format!(
            "exponent {exponent} lies in the {actual} regime, not {regime}"
        )));
    }
    let (e, s) = (exponent, scale);
    let sqrt_pi = PI.sqrt();
    let (n_exponent, observable, constant) = match (family, regime) {
        (Family::QwR, Regime::Sub) => (1.0 - e, Observable::Return, (2.0 / s).powf(e) / PI),
        (Family::QwR, Regime::Critical) => (0.0, Observable::Return, bessel_j_bracket(s)),
        (Family::QwR, Regime::Super) => (2.0 * (e - 1.0), Observable::Complement, (s / 2.0).powf(2.0 * e)),
        (Family::QwK, Regime::Sub) => (e + 1.0, Observable::Return, (s / 2.0).powf(e) / PI),
        (Family::QwK, Regime::Critical) => (2.0, Observable::Return, (s / 2.0).powi(2) * bessel_j_bracket(s)),
        (Family::QwK, Regime::Super) => (2.0 * e, Observable::Return, (s / 2.0).powf(2.0 * e)),
        (Family::CrwR, Regime::Sub) => ((1.0 - e) / 2.0, Observable::Return, (2.0 / s).powf(e / 2.0) / sqrt_pi),
        (Family::CrwR, Regime::Critical) => (0.0, Observable::Return, scaled_bessel_i_sum(s)),
        (Family::CrwR, Regime::Super) => (e - 1.0, Observable::Complement, (s / 2.0).powf(e)),
        (Family::CrwK, Regime::Sub) => ((e + 1.0) / 2.0, Observable::Return, (s / 2.0).powf(e / 2.0) / sqrt_pi),
        (Family::CrwK, Regime::Critical) => (1.0, Observable::Return, s / 2.0 * scaled_bessel_i_sum(s)),
        (Family::CrwK, Regime::Super) => (e, Observable::Return, (s / 2.0).powf(e)),
    };
    Ok(LimitConstant { regime, n_exponent, observable, constant })
}

fn expect(spec: &FamilySpec, family: Family) -> Result<f64> {
    if spec.family() != family {
        return Err(WalkError::domain(format!("expected a {family} spec, got {}", spec.family())));
    }
    let t = spec.final_time();
    if t % 2 == 1 {
        return Err(WalkError::Parity(format!("the asymptotes describe even final times, got {t}")));
    }
    Ok(t as f64)
}

// scale^e T^{1-e}
fn bessel_argument(spec: &FamilySpec, t: f64) -> f64 {
    let e = spec.exponent();
    (e * spec.scale().ln() + (1.0 - e) * t.ln()).exp()
}

// (scale/T)^power
fn k_prefactor(spec: &FamilySpec, t: f64, power: f64) -> f64 {
    (power * (spec.scale().ln() - t.ln())).exp()
}

pub fn asym_qw_r(spec: &FamilySpec) -> Result<f64> {
    let t = expect(spec, Family::QwR)?;
    Ok(bessel_j_bracket(bessel_argument(spec, t)))
}

pub fn asym_qw_k(spec: &FamilySpec) -> Result<f64> {
    let t = expect(spec, Family::QwK)?;
    let bracket = bessel_j_bracket(bessel_argument(spec, t));
    Ok(k_prefactor(spec, t, 2.0 * spec.exponent()) * bracket)
}

pub fn asym_crw_r(spec: &FamilySpec) -> Result<f64> {
    let t = expect(spec, Family::CrwR)?;
    Ok(scaled_bessel_i_sum(bessel_argument(spec, t)))
}

pub fn asym_crw_k(spec: &FamilySpec) -> Result<f64> {
    let t = expect(spec, Family::CrwK)?;
    let bracket = scaled_bessel_i_sum(bessel_argument(spec, t));
    Ok(k_prefactor(spec, t, spec.exponent()) * bracket)
}

/// Predicted return probability for any family.
pub fn asymptotic_return_probability(spec: &FamilySpec) -> Result<f64> {
    match spec.family() {
        Family::QwR => asym_qw_r(spec),
        Family::QwK => asym_qw_k(spec),
        Family::CrwR => asym_crw_r(spec),
        Family::CrwK => asym_crw_k(spec),
    }
}

/// Predicted `1 - p`, without cancellation for the R families when the
/// bracket argument is small.
pub fn asymptotic_complement(spec: &FamilySpec) -> Result<f64> {
    match spec.family() {
        Family::QwR => {
            let t = expect(spec, Family::QwR)?;
            Ok(bessel_j_bracket_complement(bessel_argument(spec, t)))
        }
        Family::CrwR => {
            let t = expect(spec, Family::CrwR)?;
            Ok(scaled_bessel_i_sum_complement(bessel_argument(spec, t)))
        }
        Family::QwK | Family::CrwK => Ok(1.0 - asymptotic_return_probability(spec)?),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoteReport {
    pub n: u64,
    pub predicted: f64,
    pub regime: Regime,
    pub scaled_limit_constant: f64,
}

pub fn asymptote_report(spec: &FamilySpec) -> Result<AsymptoteReport> {
    let predicted = asymptotic_return_probability(spec)?;
    let regime = Regime::from_exponent(spec.exponent());
    let limit = limit_constant(spec.family(), regime, spec.exponent(), spec.scale())?;
    Ok(AsymptoteReport {
        n: spec.final_time(),
        predicted,
        regime,
        scaled_limit_constant: limit.constant,
    })
}
