use serde::Serialize;

use super::config::RawConfig;
use super::sweep::{run_sweep, ReturnReport, SweepConfig};
use crate::coin::Family;
use crate::error::{Result, WalkError};

pub const MIN_RATE_POINTS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RateEstimate {
    /// Least-squares slope of `ln(observable)` against `ln n`.
    pub slope: f64,
    /// Root-mean-square residual of the fit.
    pub residual: f64,
    /// Number of rows in the fit.
    pub points: usize,
}

/// Fits the decay exponent of the tracked observable (`p`, or `1 - p` in the
/// localizing regime) over the largest-`n` half of the rows.
pub fn estimate_rate(reports: &[ReturnReport]) -> Result<RateEstimate> {
    let mut usable: Vec<(f64, f64)> = reports
        .iter()
        .filter_map(|r| {
            let v = r.tracked.or_else(|| r.best_probability())?;
            (v > 0.0 && v.is_finite() && r.n > 0).then(|| ((r.n as f64).ln(), v.ln()))
        })
        .collect();
    if usable.len() < MIN_RATE_POINTS {
        return Err(WalkError::InsufficientData(format!(
            "{} usable rows, need at least {MIN_RATE_POINTS} with a positive observable",
            usable.len()
        )));
    }
    usable.sort_by(|a, b| a.0.total_cmp(&b.0));
    let tail = &usable[usable.len() / 2..];
    let k = tail.len() as f64;
    let mean_x = tail.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = tail.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = tail.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = tail.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(WalkError::InsufficientData("all rows share one final time".into()));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = tail.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(RateEstimate { slope, residual: (sse / k).sqrt(), points: tail.len() })
}

/// Paired quantum / classical sweeps with matching exponent and scale.
#[derive(Debug, Clone, PartialEq)]
pub struct CompareConfig {
    pub quantum: SweepConfig,
    pub classical: SweepConfig,
}

impl CompareConfig {
    /// `family` picks the R or K pair; either member of the pair may be given.
    pub fn new(quantum: SweepConfig, classical: SweepConfig) -> Result<Self> {
        if !quantum.family.is_quantum() || classical.family.is_quantum() {
            return Err(WalkError::config("compare needs one quantum and one classical sweep"));
        }
        if quantum.family.is_r_type() != classical.family.is_r_type() {
            return Err(WalkError::config("compare pairs qw-r with crw-r and qw-k with crw-k"));
        }
        if quantum.exponent != classical.exponent || quantum.scale != classical.scale {
            return Err(WalkError::config(format!(
                "compare needs alpha = beta and tau = theta, got ({}, {}) and ({}, {})",
                quantum.exponent, quantum.scale, classical.exponent, classical.scale
            )));
        }
        Ok(CompareConfig { quantum, classical })
    }

    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let family = raw.family.unwrap_or(Family::QwR);
        let (qw, crw) = if family.is_r_type() { (Family::QwR, Family::CrwR) } else { (Family::QwK, Family::CrwK) };
        let quantum = SweepConfig::from_raw(&RawConfig { family: Some(qw), ..raw.clone() })?;
        let classical = SweepConfig::from_raw(&RawConfig {
            family: Some(crw),
            exponent: raw.crw_exponent.or(raw.exponent),
            scale: raw.crw_scale.or(raw.scale),
            ..raw.clone()
        })?;
        Self::new(quantum, classical)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: u64,
    pub qw_p: Option<f64>,
    pub qw_scaled_value: Option<f64>,
    pub crw_p: Option<f64>,
    pub crw_scaled_value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub qw_rate: RateEstimate,
    pub crw_rate: RateEstimate,
    /// Fitted quantum slope over fitted classical slope; about 2.
    pub exponent_ratio: f64,
    pub rows: Vec<ComparisonRow>,
}

pub fn compare_models(cfg: &CompareConfig) -> Result<Comparison> {
    let qw = run_sweep(&cfg.quantum)?;
    let crw = run_sweep(&cfg.classical)?;
    let qw_rate = estimate_rate(&qw)?;
    let crw_rate = estimate_rate(&crw)?;
    let rows = qw
        .iter()
        .zip(&crw)
        .map(|(q, c)| ComparisonRow {
            n: q.n,
            qw_p: q.best_probability(),
            qw_scaled_value: q.scaled_value,
            crw_p: c.best_probability(),
            crw_scaled_value: c.scaled_value,
        })
        .collect();
    Ok(Comparison { qw_rate, crw_rate, exponent_ratio: qw_rate.slope / crw_rate.slope, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::asymptotics::Regime;
    use crate::experiments::config::Routes;
    use approx::assert_abs_diff_eq;

    fn row(n: u64, p: f64) -> ReturnReport {
        ReturnReport {
            n,
            p_exact: Some(p),
            p_closed_form: None,
            p_asymptotic: None,
            ratio: None,
            scaled_value: None,
            regime: Regime::Sub,
            tracked: None,
        }
    }

    #[test]
    fn constant_series_has_zero_slope() {
        let rows: Vec<_> = (1..=8).map(|k| row(2 * k, 0.25)).collect();
        let fit = estimate_rate(&rows).unwrap();
        assert_abs_diff_eq!(fit.slope, 0.0, epsilon = 1e-15);
        assert_eq!(fit.points, 4);
    }

    #[test]
    fn power_law_slope() {
        let rows: Vec<_> = (1..=10).map(|k| row(10 * k, 3.0 * (10.0 * k as f64).powf(-1.5))).collect();
        let fit = estimate_rate(&rows).unwrap();
        assert_abs_diff_eq!(fit.slope, -1.5, epsilon = 1e-12);
        assert!(fit.residual < 1e-12);
    }

    #[test]
    fn too_few_rows() {
        let rows = vec![row(2, 0.5), row(4, 0.3), row(6, 0.0), row(8, 0.2)];
        assert!(matches!(estimate_rate(&rows), Err(WalkError::InsufficientData(_))));
    }

    #[test]
    fn crw_k_critical_slope() {
        let n_values: Vec<u64> = (8..=14).map(|k| 1u64 << k).collect();
        let cfg = SweepConfig::new(Family::CrwK, 1.0, 1.0, n_values).unwrap();
        let fit = estimate_rate(&run_sweep(&cfg).unwrap()).unwrap();
        assert_abs_diff_eq!(fit.slope, -1.0, epsilon = 0.05);
    }

    #[test]
    fn quantum_rate_is_twice_classical() {
        let n_values: Vec<u64> = (8..=13).map(|k| 1u64 << k).collect();
        let routes = Routes { exact: false, closed_form: true, asymptotic: true };
        let q = SweepConfig::new(Family::QwR, 0.5, 1.0, n_values.clone()).unwrap().with_routes(routes).unwrap();
        let c = SweepConfig::new(Family::CrwR, 0.5, 1.0, n_values).unwrap().with_routes(routes).unwrap();
        let cmp = compare_models(&CompareConfig::new(q, c).unwrap()).unwrap();
        assert_abs_diff_eq!(cmp.qw_rate.slope, -0.5, epsilon = 0.05);
        assert_abs_diff_eq!(cmp.crw_rate.slope, -0.25, epsilon = 0.05);
        assert_abs_diff_eq!(cmp.exponent_ratio, 2.0, epsilon = 0.2);
    }

    #[test]
    fn localizing_rates() {
        let raw = RawConfig {
            exponent: Some(2.0),
            n_from: Some(1000),
            n_to: Some(64000),
            n_double: Some(true),
            routes: Some("asym".parse().unwrap()),
            ..RawConfig::default()
        };
        let cmp = compare_models(&CompareConfig::from_raw(&raw).unwrap()).unwrap();
        assert_abs_diff_eq!(cmp.qw_rate.slope, -2.0, epsilon = 0.05);
        assert_abs_diff_eq!(cmp.crw_rate.slope, -1.0, epsilon = 0.05);
    }

    #[test]
    fn mismatched_models() {
        let raw = RawConfig {
            exponent: Some(0.5),
            crw_exponent: Some(1.5),
            n: Some(vec![10, 20]),
            ..RawConfig::default()
        };
        assert!(matches!(CompareConfig::from_raw(&raw), Err(WalkError::Config(_))));
        let q = SweepConfig::new(Family::QwR, 0.5, 1.0, vec![4]).unwrap();
        let c = SweepConfig::new(Family::CrwK, 0.5, 1.0, vec![4]).unwrap();
        assert!(matches!(CompareConfig::new(q, c), Err(WalkError::Config(_))));
    }
}
