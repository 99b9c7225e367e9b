use std::path::PathBuf;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{OutputFormat, RawConfig, Routes, DEFAULT_EXACT_CEILING};
use crate::asymptotics::{
    asymptotic_complement, asymptotic_return_probability, limit_constant, Observable, Regime,
};
use crate::classical_walk::return_statistics_classical;
use crate::closed_form::{p0_classical_closed_form, p0_quantum_closed_form};
use crate::coin::{make_coin, Family, FamilySpec};
use crate::error::{Result, WalkError};
use crate::quantum_walk::return_statistics_exact;

/// Largest `|p_exact - p_closed_form|` a sweep tolerates.
pub const ROUTE_AGREEMENT_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    pub exponent: f64,
    pub scale: f64,
    pub allow_zero_exponent: bool,
    pub n_values: Vec<u64>,
    pub routes: Routes,
    pub exact_ceiling: u64,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    /// A config with default routes, ceiling and output.
    pub fn new(family: Family, exponent: f64, scale: f64, n_values: Vec<u64>) -> Result<Self> {
        let cfg = SweepConfig {
            family,
            exponent,
            scale,
            allow_zero_exponent: false,
            n_values,
            routes: Routes::ALL,
            exact_ceiling: DEFAULT_EXACT_CEILING,
            format: OutputFormat::Csv,
            out: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_routes(mut self, routes: Routes) -> Result<Self> {
        self.routes = routes;
        self.validate()?;
        Ok(self)
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let family = raw.family.ok_or_else(|| WalkError::config("missing field 'family'"))?;
        let exponent = raw.exponent.ok_or_else(|| WalkError::config("missing field 'exponent'"))?;
        let cfg = SweepConfig {
            family,
            exponent,
            scale: raw.scale.unwrap_or(1.0),
            allow_zero_exponent: raw.degenerate_exponent_zero.unwrap_or(false),
            n_values: raw.n_values()?,
            routes: raw.routes.unwrap_or_default(),
            exact_ceiling: raw.exact_ceiling.unwrap_or(DEFAULT_EXACT_CEILING),
            format: raw.format.unwrap_or_default(),
            out: raw.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Structural checks are config errors; parameter checks come from
    /// [`FamilySpec`] and stay domain errors.
    pub fn validate(&self) -> Result<()> {
        if self.routes.is_empty() {
            return Err(WalkError::config("field 'routes': no evaluation route selected"));
        }
        if self.n_values.is_empty() {
            return Err(WalkError::config("field 'n': no final times given"));
        }
        if let Some(&odd) = self.n_values.iter().find(|&&n| n % 2 == 1) {
            return Err(WalkError::config(format!("field 'n': final times must be even, got {odd}")));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WalkError::config("field 'n': final times must be strictly ascending"));
        }
        for &n in &self.n_values {
            self.spec_at(n)?;
        }
        Ok(())
    }

    pub fn spec_at(&self, n: u64) -> Result<FamilySpec> {
        FamilySpec::with_zero_exponent(self.family, self.exponent, self.scale, n, self.allow_zero_exponent)
    }

    pub fn regime(&self) -> Regime {
        Regime::from_exponent(self.exponent)
    }

    /// Final times for which the exact route is requested but skipped.
    pub fn exact_skipped(&self) -> Vec<u64> {
        if !self.routes.exact {
            return Vec::new();
        }
        self.n_values.iter().copied().filter(|&n| n > self.exact_ceiling).collect()
    }
}

/// One row of a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnReport {
    pub n: u64,
    pub p_exact: Option<f64>,
    pub p_closed_form: Option<f64>,
    pub p_asymptotic: Option<f64>,
    /// Best non-asymptotic probability over the asymptotic one.
    pub ratio: Option<f64>,
    pub scaled_value: Option<f64>,
    pub regime: Regime,
    /// The quantity the regime's scaling law acts on (`p` or `1 - p`),
    /// computed without cancellation where possible.
    #[serde(skip)]
    pub tracked: Option<f64>,
}

impl ReturnReport {
    /// Best available probability: exact, then closed form, then asymptotic.
    pub fn best_probability(&self) -> Option<f64> {
        self.p_exact.or(self.p_closed_form).or(self.p_asymptotic)
    }

    /// Recomputes `tracked` from the probability columns (used for rows read
    /// back from a file).
    pub fn track(&mut self, family: Family) {
        let complement = family.is_r_type() && self.regime == Regime::Super;
        self.tracked = self.best_probability().map(|p| if complement { 1.0 - p } else { p });
    }
}

fn report_row(cfg: &SweepConfig, n: u64) -> Result<ReturnReport> {
    let spec = cfg.spec_at(n)?;
    let regime = cfg.regime();
    let limit = limit_constant(cfg.family, regime, cfg.exponent, cfg.scale)?;
    let quantum = cfg.family.is_quantum();

    let exact = if cfg.routes.exact && n <= cfg.exact_ceiling {
        let stats =
            if quantum { return_statistics_exact(&spec)? } else { return_statistics_classical(&spec)? };
        Some((stats.at_origin, stats.away))
    } else {
        None
    };
    let closed = if cfg.routes.closed_form {
        let coin = make_coin(&spec)?;
        let p = if quantum { p0_quantum_closed_form(&coin, n)? } else { p0_classical_closed_form(&coin, n)? };
        Some((p, 1.0 - p))
    } else {
        None
    };
    let asym = if cfg.routes.asymptotic {
        Some((asymptotic_return_probability(&spec)?, asymptotic_complement(&spec)?))
    } else {
        None
    };

    let best = exact.or(closed).or(asym).expect("validated: at least one route");
    let ratio = match (exact.or(closed), asym) {
        (Some((p, _)), Some((q, _))) if q > 0.0 => Some(p / q),
        _ => None,
    };
    let tracked = match limit.observable {
        Observable::Return => best.0,
        Observable::Complement => best.1,
    };
    Ok(ReturnReport {
        n,
        p_exact: exact.map(|e| e.0),
        p_closed_form: closed.map(|c| c.0),
        p_asymptotic: asym.map(|a| a.0),
        ratio,
        scaled_value: Some(limit.scaled(n, best.0, best.1)),
        regime,
        tracked: Some(tracked),
    })
}

/// Evaluates every requested route at every final time. Rows run in
/// parallel; the result is in `n` order and independent of the worker count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<ReturnReport>> {
    cfg.validate()?;
    let rows: Vec<Result<ReturnReport>> = cfg.n_values.par_iter().map(|&n| report_row(cfg, n)).collect();
    let mut reports = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row?;
        check_agreement(&row)?;
        reports.push(row);
    }
    Ok(reports)
}

/// Fails when the exact and closed-form probabilities of a row differ by more
/// than [`ROUTE_AGREEMENT_TOLERANCE`].
pub fn check_agreement(row: &ReturnReport) -> Result<()> {
    if let (Some(exact), Some(closed)) = (row.p_exact, row.p_closed_form) {
        let diff = (exact - closed).abs();
        if diff > ROUTE_AGREEMENT_TOLERANCE || diff.is_nan() {
            return Err(WalkError::RouteDisagreement { n: row.n, exact, closed, diff });
        }
    }
    Ok(())
}
