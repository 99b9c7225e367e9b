//! Flat `key = value` run configuration, merged with command-line flags.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::coin::Family;
use crate::error::{Result, WalkError};

pub const DEFAULT_EXACT_CEILING: u64 = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = WalkError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(WalkError::config(format!("unknown format '{other}' (expected csv or json)"))),
        }
    }
}

/// Evaluation routes enabled for a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Routes {
    pub exact: bool,
    pub closed_form: bool,
    pub asymptotic: bool,
}

impl Routes {
    pub const ALL: Routes = Routes { exact: true, closed_form: true, asymptotic: true };

    pub fn is_empty(&self) -> bool {
        !(self.exact || self.closed_form || self.asymptotic)
    }
}

impl Default for Routes {
    fn default() -> Self {
        Routes::ALL
    }
}

impl FromStr for Routes {
    type Err = WalkError;

    /// Comma-separated subset of `exact`, `closed`, `asym`.
    fn from_str(s: &str) -> Result<Self> {
        let mut routes = Routes { exact: false, closed_form: false, asymptotic: false };
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match item {
                "exact" => routes.exact = true,
                "closed" | "closed_form" | "closed-form" => routes.closed_form = true,
                "asym" | "asymptotic" => routes.asymptotic = true,
                other => {
                    return Err(WalkError::config(format!(
                        "unknown route '{other}' (expected exact, closed or asym)"
                    )))
                }
            }
        }
        Ok(routes)
    }
}

impl fmt::Display for Routes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = [(self.exact, "exact"), (self.closed_form, "closed"), (self.asymptotic, "asym")]
            .into_iter()
            .filter_map(|(on, name)| on.then_some(name))
            .collect();
        f.write_str(&names.join(","))
    }
}

/// Partially specified settings, from a file, from flags, or both.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RawConfig {
    pub family: Option<Family>,
    pub exponent: Option<f64>,
    pub scale: Option<f64>,
    pub n: Option<Vec<u64>>,
    pub n_from: Option<u64>,
    pub n_to: Option<u64>,
    pub n_step: Option<u64>,
    pub n_double: Option<bool>,
    pub routes: Option<Routes>,
    pub format: Option<OutputFormat>,
    pub out: Option<PathBuf>,
    pub degenerate_exponent_zero: Option<bool>,
    pub exact_ceiling: Option<u64>,
    /// Classical-side exponent and scale for model comparisons.
    pub crw_exponent: Option<f64>,
    pub crw_scale: Option<f64>,
}

fn parse_field<T: FromStr>(key: &str, value: &str) -> std::result::Result<T, String>
where
    T::Err: fmt::Display,
{
    value.parse::<T>().map_err(|e| format!("field '{key}': cannot parse '{value}': {e}"))
}

fn parse_bool(key: &str, value: &str) -> std::result::Result<bool, String> {
    match value.to_ascii_lowercase().as_str() {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(format!("field '{key}': expected a boolean, got '{value}'")),
    }
}

impl RawConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| WalkError::config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text, &path.display().to_string())
    }

    /// Parses `key = value` lines; `#` starts a comment. Keys may use `-` or `_`.
    pub fn parse(text: &str, origin: &str) -> Result<Self> {
        let mut cfg = RawConfig::default();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = raw_line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fail = |msg: String| WalkError::config(format!("{origin} line {}: {msg}", idx + 1));
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| fail(format!("expected key = value, got '{line}'")))?;
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            cfg.set(&key, value).map_err(fail)?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, value: &str) -> std::result::Result<(), String> {
        match key {
            "family" => self.family = Some(value.parse().map_err(|e: WalkError| format!("field 'family': {e}"))?),
            "exponent" => self.exponent = Some(parse_field(key, value)?),
            "scale" => self.scale = Some(parse_field(key, value)?),
            "n" => {
                let values = value
                    .split(',')
                    .map(|v| parse_field::<u64>(key, v.trim()))
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                self.n = Some(values);
            }
            "n_from" => self.n_from = Some(parse_field(key, value)?),
            "n_to" => self.n_to = Some(parse_field(key, value)?),
            "n_step" => self.n_step = Some(parse_field(key, value)?),
            "n_double" => self.n_double = Some(parse_bool(key, value)?),
            "routes" => self.routes = Some(value.parse().map_err(|e: WalkError| format!("field 'routes': {e}"))?),
            "format" => self.format = Some(value.parse().map_err(|e: WalkError| format!("field 'format': {e}"))?),
            "out" => self.out = Some(PathBuf::from(value)),
            "degenerate_exponent_zero" => self.degenerate_exponent_zero = Some(parse_bool(key, value)?),
            "exact_ceiling" => self.exact_ceiling = Some(parse_field(key, value)?),
            "crw_exponent" => self.crw_exponent = Some(parse_field(key, value)?),
            "crw_scale" => self.crw_scale = Some(parse_field(key, value)?),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Fields set in `overrides` win.
    pub fn merge(self, overrides: RawConfig) -> RawConfig {
        RawConfig {
            family: overrides.family.or(self.family),
            exponent: overrides.exponent.or(self.exponent),
            scale: overrides.scale.or(self.scale),
            n: overrides.n.or(self.n),
            n_from: overrides.n_from.or(self.n_from),
            n_to: overrides.n_to.or(self.n_to),
            n_step: overrides.n_step.or(self.n_step),
            n_double: overrides.n_double.or(self.n_double),
            routes: overrides.routes.or(self.routes),
            format: overrides.format.or(self.format),
            out: overrides.out.or(self.out),
            degenerate_exponent_zero: overrides.degenerate_exponent_zero.or(self.degenerate_exponent_zero),
            exact_ceiling: overrides.exact_ceiling.or(self.exact_ceiling),
            crw_exponent: overrides.crw_exponent.or(self.crw_exponent),
            crw_scale: overrides.crw_scale.or(self.crw_scale),
        }
    }

    /// The list of final times: either `n` or a `n_from..=n_to` range, stepped
    /// by `n_step` (default 2) or doubled.
    pub fn n_values(&self) -> Result<Vec<u64>> {
        let has_range = self.n_from.is_some() || self.n_to.is_some();
        match (&self.n, has_range) {
            (Some(_), true) => Err(WalkError::config("give either n or an n_from/n_to range, not both")),
            (Some(list), false) => Ok(list.clone()),
            (None, false) => Err(WalkError::config("missing field 'n' (or n_from/n_to)")),
            (None, true) => {
                let from = self.n_from.ok_or_else(|| WalkError::config("missing field 'n_from'"))?;
                let to = self.n_to.ok_or_else(|| WalkError::config("missing field 'n_to'"))?;
                if from == 0 || from > to {
                    return Err(WalkError::config(format!("empty range n_from = {from}, n_to = {to}")));
                }
                let mut values = Vec::new();
                if self.n_double.unwrap_or(false) {
                    if self.n_step.is_some() {
                        return Err(WalkError::config("n_step and n_double are mutually exclusive"));
                    }
                    let mut n = from;
                    while n <= to {
                        values.push(n);
                        n = n.checked_mul(2).unwrap_or(u64::MAX);
                    }
                } else {
                    let step = self.n_step.unwrap_or(2);
                    if step == 0 {
                        return Err(WalkError::config("field 'n_step': must be positive"));
                    }
                    values.extend((from..=to).step_by(step as usize));
                }
                Ok(values)
            }
        }
    }
}
