//! Sweeps over final times, rate fits and model comparisons.

pub mod config;
pub mod output;
mod rate;
mod sweep;

pub use config::{OutputFormat, RawConfig, Routes, DEFAULT_EXACT_CEILING};
pub use output::{
    render_comparison, render_reports, reports_from_csv, reports_from_json, reports_to_csv, reports_to_json,
    CSV_HEADER,
};
pub use rate::{compare_models, estimate_rate, CompareConfig, Comparison, ComparisonRow, RateEstimate};
pub use sweep::{check_agreement, run_sweep, ReturnReport, SweepConfig, ROUTE_AGREEMENT_TOLERANCE};
