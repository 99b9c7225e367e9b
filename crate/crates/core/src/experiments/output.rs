//! CSV and JSON rendering of sweep reports.

use std::fmt::Write as _;

use super::config::OutputFormat;
use super::rate::Comparison;
use super::sweep::ReturnReport;
use crate::asymptotics::Regime;
use crate::error::{Result, WalkError};

pub const CSV_HEADER: &str = "n,p_exact,p_closed_form,p_asymptotic,ratio,scaled_value,regime";

// 17 significant digits, enough to round-trip any f64
fn fmt_float(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn reports_to_csv(reports: &[ReturnReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.n,
            fmt_float(r.p_exact),
            fmt_float(r.p_closed_form),
            fmt_float(r.p_asymptotic),
            fmt_float(r.ratio),
            fmt_float(r.scaled_value),
            r.regime
        );
    }
    out
}

pub fn reports_to_json(reports: &[ReturnReport]) -> String {
    let mut s = serde_json::to_string_pretty(reports).expect("reports serialize");
    s.push('\n');
    s
}

pub fn render_reports(reports: &[ReturnReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => reports_to_csv(reports),
        OutputFormat::Json => reports_to_json(reports),
    }
}

pub fn render_comparison(cmp: &Comparison, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(cmp).expect("comparison serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = String::from("n,qw_p,qw_scaled_value,crw_p,crw_scaled_value\n");
            for r in &cmp.rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    r.n,
                    fmt_float(r.qw_p),
                    fmt_float(r.qw_scaled_value),
                    fmt_float(r.crw_p),
                    fmt_float(r.crw_scaled_value)
                );
            }
            out
        }
    }
}

fn parse_regime(s: &str) -> Option<Regime> {
    Regime::ALL.into_iter().find(|r| r.as_str() == s)
}

/// Reads rows written by [`reports_to_csv`].
pub fn reports_from_csv(text: &str) -> Result<Vec<ReturnReport>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    match lines.next() {
        Some((_, header)) if header.trim() == CSV_HEADER => {}
        _ => return Err(WalkError::config(format!("expected CSV header '{CSV_HEADER}'"))),
    }
    let mut reports = Vec::new();
    for (idx, line) in lines {
        let fail = |msg: String| WalkError::config(format!("CSV line {}: {msg}", idx + 1));
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 7 {
            return Err(fail(format!("expected 7 fields, got {}", fields.len())));
        }
        let float = |i: usize, name: &str| -> Result<Option<f64>> {
            if fields[i].is_empty() {
                return Ok(None);
            }
            fields[i]
                .parse::<f64>()
                .map(Some)
                .map_err(|e| fail(format!("field '{name}': {e}")))
        };
        reports.push(ReturnReport {
            n: fields[0].parse().map_err(|e| fail(format!("field 'n': {e}")))?,
            p_exact: float(1, "p_exact")?,
            p_closed_form: float(2, "p_closed_form")?,
            p_asymptotic: float(3, "p_asymptotic")?,
            ratio: float(4, "ratio")?,
            scaled_value: float(5, "scaled_value")?,
            regime: parse_regime(fields[6]).ok_or_else(|| fail(format!("field 'regime': '{}'", fields[6])))?,
            tracked: None,
        });
    }
    Ok(reports)
}

pub fn reports_from_json(text: &str) -> Result<Vec<ReturnReport>> {
    serde_json::from_str(text).map_err(|e| WalkError::config(format!("JSON input: {e}")))
}
