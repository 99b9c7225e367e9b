//! Coin matrices for the final-time dependent walks.
//!
//! A coin `[[a, b], [c, d]]` drives every step of a walk whose final time is
//! `n`. Quantum coins are unitary; classical coins are column-stochastic
//! transition matrices (column 0 is "previous step was left", row 0 is "next
//! step goes left").

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, WalkError};

/// Entry-wise tolerance for the unitarity and stochasticity checks.
pub const COIN_TOLERANCE: f64 = 1e-12;

pub type Mat2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CoinKind {
    Unitary,
    Stochastic,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Coin {
    a: Complex64,
    b: Complex64,
    c: Complex64,
    d: Complex64,
    kind: CoinKind,
}

impl Coin {
    /// Builds a unitary coin, checking `M M^† = I` entry-wise.
    pub fn unitary(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let coin = Coin { a, b, c, d, kind: CoinKind::Unitary };
        let defect = coin.unitarity_defect();
        if !(defect <= COIN_TOLERANCE) {
            return Err(WalkError::domain(format!(
                "matrix is not unitary (max |M M^† - I| = {defect:e})"
            )));
        }
        Ok(coin)
    }

    /// Builds a real unitary coin.
    pub fn real_unitary(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Coin::unitary(a.into(), b.into(), c.into(), d.into())
    }

    /// Builds a column-stochastic coin: entries in `[0, 1]`, `a + c = b + d = 1`.
    pub fn stochastic(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !(-COIN_TOLERANCE..=1.0 + COIN_TOLERANCE).contains(&v) {
                return Err(WalkError::domain(format!("entry {name} = {v} outside [0, 1]")));
            }
        }
        if (a + c - 1.0).abs() > COIN_TOLERANCE || (b + d - 1.0).abs() > COIN_TOLERANCE {
            return Err(WalkError::domain(format!(
                "columns must sum to 1 (a + c = {}, b + d = {})",
                a + c,
                b + d
            )));
        }
        Ok(Coin {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
            kind: CoinKind::Stochastic,
        })
    }

    pub fn hadamard() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Coin {
            a: h.into(),
            b: h.into(),
            c: h.into(),
            d: (-h).into(),
            kind: CoinKind::Unitary,
        }
    }

    pub fn kind(&self) -> CoinKind {
        self.kind
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn c(&self) -> Complex64 {
        self.c
    }

    pub fn d(&self) -> Complex64 {
        self.d
    }

    pub fn matrix(&self) -> Mat2 {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Real entries `(a, b, c, d)` of a stochastic coin.
    pub fn probabilities(&self) -> Result<(f64, f64, f64, f64)> {
        self.expect_kind(CoinKind::Stochastic)?;
        Ok((self.a.re, self.b.re, self.c.re, self.d.re))
    }

    pub(crate) fn expect_kind(&self, expected: CoinKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(WalkError::Kind { expected, found: self.kind })
        }
    }

    fn unitarity_defect(&self) -> f64 {
        let m = self.matrix();
        let mut worst: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                let dot = m[i][0] * m[j][0].conj() + m[i][1] * m[j][1].conj();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).norm());
            }
        }
        worst
    }
}

/// Splits a coin into its left-moving part `P = [[a, b], [0, 0]]` and its
/// right-moving part `Q = [[0, 0], [c, d]]`.
pub fn split(coin: &Coin) -> (Mat2, Mat2) {
    let zero = Complex64::new(0.0, 0.0);
    let p = [[coin.a, coin.b], [zero, zero]];
    let q = [[zero, zero], [coin.c, coin.d]];
    (p, q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// Quantum walk with `a = (tau/n)^alpha` on the diagonal.
    QwR,
    /// Quantum walk with `(tau/n)^alpha` off the diagonal.
    QwK,
    /// Correlated random walk with `(theta/n)^beta` persistence.
    CrwR,
    /// Correlated random walk with `(theta/n)^beta` reversal.
    CrwK,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::QwR, Family::QwK, Family::CrwR, Family::CrwK];

    pub fn is_quantum(self) -> bool {
        matches!(self, Family::QwR | Family::QwK)
    }

    /// The family whose coin places the parametric entry on the diagonal.
    pub fn is_r_type(self) -> bool {
        matches!(self, Family::QwR | Family::CrwR)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::QwR => "qw-r",
            Family::QwK => "qw-k",
            Family::CrwR => "crw-r",
            Family::CrwK => "crw-k",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "qw-r" => Ok(Family::QwR),
            "qw-k" => Ok(Family::QwK),
            "crw-r" => Ok(Family::CrwR),
            "crw-k" => Ok(Family::CrwK),
            other => Err(WalkError::config(format!(
                "unknown family '{other}' (expected qw-r, qw-k, crw-r or crw-k)"
            ))),
        }
    }
}

/// A coin family together with its exponent, scale and final time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilySpec {
    family: Family,
    exponent: f64,
    scale: f64,
    final_time: u64,
}

impl FamilySpec {
    /// Requires `exponent > 0`, `scale > 0` and `final_time >= scale`.
    pub fn new(family: Family, exponent: f64, scale: f64, final_time: u64) -> Result<Self> {
        Self::with_zero_exponent(family, exponent, scale, final_time, false)
    }

    /// Same as [`FamilySpec::new`], but `exponent = 0` is admitted when
    /// `allow_zero_exponent` is set (the boundary case where the coin no
    /// longer depends on `n`).
    pub fn with_zero_exponent(
        family: Family,
        exponent: f64,
        scale: f64,
        final_time: u64,
        allow_zero_exponent: bool,
    ) -> Result<Self> {
        let exponent_ok = if allow_zero_exponent { exponent >= 0.0 } else { exponent > 0.0 };
        if !exponent_ok || !exponent.is_finite() {
            return Err(WalkError::domain(format!(
                "exponent must be {} (got {exponent})",
                if allow_zero_exponent { ">= 0" } else { "> 0" }
            )));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(WalkError::domain(format!("scale must be > 0 (got {scale})")));
        }
        if final_time == 0 {
            return Err(WalkError::domain("final time must be >= 1"));
        }
        if exponent > 0.0 && (final_time as f64) < scale {
            return Err(WalkError::domain(format!(
                "final time {final_time} is below the scale {scale}: (scale/n)^exponent exceeds 1"
            )));
        }
        Ok(FamilySpec { family, exponent, scale, final_time })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn final_time(&self) -> u64 {
        self.final_time
    }

    /// Same family and parameters at another final time.
    pub fn at_time(&self, final_time: u64) -> Result<Self> {
        Self::with_zero_exponent(self.family, self.exponent, self.scale, final_time, true)
    }

    /// `(scale / n)^exponent`, evaluated as `exp(exponent (ln scale - ln n))`.
    pub fn parametric_entry(&self) -> f64 {
        if self.exponent == 0.0 {
            return 1.0;
        }
        (self.exponent * (self.scale.ln() - (self.final_time as f64).ln())).exp()
    }
}

fn expect_family(spec: &FamilySpec, family: Family) -> Result<()> {
    if spec.family == family {
        Ok(())
    } else {
        Err(WalkError::domain(format!(
            "expected a {family} spec, got {}",
            spec.family
        )))
    }
}

// sqrt(1 - r^2) without losing digits as r -> 1
fn complement_root(r: f64) -> f64 {
    ((1.0 - r) * (1.0 + r)).max(0.0).sqrt()
}

pub fn make_coin_qw_r(spec: &FamilySpec) -> Result<Coin> {
    expect_family(spec, Family::QwR)?;
    let r = spec.parametric_entry();
    let s = complement_root(r);
    Coin::real_unitary(r, s, s, -r)
}

pub fn make_coin_qw_k(spec: &FamilySpec) -> Result<Coin> {
    expect_family(spec, Family::QwK)?;
    let r = spec.parametric_entry();
    let s = complement_root(r);
    Coin::real_unitary(s, r, r, -s)
}

pub fn make_coin_crw_r(spec: &FamilySpec) -> Result<Coin> {
    expect_family(spec, Family::CrwR)?;
    let r = spec.parametric_entry();
    Coin::stochastic(r, 1.0 - r, 1.0 - r, r)
}

pub fn make_coin_crw_k(spec: &FamilySpec) -> Result<Coin> {
    expect_family(spec, Family::CrwK)?;
    let r = spec.parametric_entry();
    Coin::stochastic(1.0 - r, r, r, 1.0 - r)
}

/// Builds the coin of whichever family `spec` names.
pub fn make_coin(spec: &FamilySpec) -> Result<Coin> {
    match spec.family {
        Family::QwR => make_coin_qw_r(spec),
        Family::QwK => make_coin_qw_k(spec),
        Family::CrwR => make_coin_crw_r(spec),
        Family::CrwK => make_coin_crw_k(spec),
    }
}
