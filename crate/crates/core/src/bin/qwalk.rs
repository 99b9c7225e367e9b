use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qwalk_core::coin::Family;
use qwalk_core::experiments::{
    compare_models, estimate_rate, render_comparison, render_reports, reports_from_csv, reports_from_json,
    run_sweep, CompareConfig, OutputFormat, RateEstimate, RawConfig, Routes, SweepConfig,
};
use qwalk_core::WalkError;

/// Return probabilities of final-time dependent quantum and correlated random walks.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Quantum-walk return probabilities (family qw-r or qw-k)
    QwReturn(Common),
    /// Correlated random walk return probabilities (family crw-r or crw-k)
    CrwReturn(Common),
    /// Sweep any family over a list of final times
    Sweep(Common),
    /// Quantum vs classical sweeps with matching exponent and scale
    Compare(CompareArgs),
    /// Fit the decay exponent of a sweep or of a saved report
    Rate(RateArgs),
}

#[derive(Args, Clone)]
struct Common {
    /// key = value file; flags override its entries
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<Family>,
    #[arg(long, allow_negative_numbers = true)]
    exponent: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    scale: Option<f64>,
    /// Final time(s), comma-separated
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<u64>>,
    #[arg(long)]
    n_from: Option<u64>,
    #[arg(long)]
    n_to: Option<u64>,
    #[arg(long, conflicts_with = "n_double")]
    n_step: Option<u64>,
    /// Double n from n-from up to n-to
    #[arg(long)]
    n_double: bool,
    /// Subset of exact,closed,asym
    #[arg(long)]
    routes: Option<Routes>,
    #[arg(long)]
    format: Option<OutputFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Admit exponent 0 (coin independent of n)
    #[arg(long)]
    degenerate_exponent_zero: bool,
    /// Skip the exact route above this final time
    #[arg(long)]
    exact_ceiling: Option<u64>,
}

#[derive(Args)]
struct CompareArgs {
    #[command(flatten)]
    common: Common,
    /// Classical exponent, defaults to --exponent
    #[arg(long)]
    crw_exponent: Option<f64>,
    /// Classical scale, defaults to --scale
    #[arg(long)]
    crw_scale: Option<f64>,
}

#[derive(Args)]
struct RateArgs {
    #[command(flatten)]
    common: Common,
    /// Saved report (CSV or JSON) to fit instead of running a sweep
    #[arg(long)]
    input: Option<PathBuf>,
}

enum Failure {
    Walk(WalkError),
    Io(String),
}

impl From<WalkError> for Failure {
    fn from(e: WalkError) -> Self {
        Failure::Walk(e)
    }
}

impl Common {
    fn raw(&self) -> Result<RawConfig, Failure> {
        let file = match &self.config {
            Some(path) => RawConfig::from_file(path)?,
            None => RawConfig::default(),
        };
        let flags = RawConfig {
            family: self.family,
            exponent: self.exponent,
            scale: self.scale,
            n: self.n.clone(),
            n_from: self.n_from,
            n_to: self.n_to,
            n_step: self.n_step,
            n_double: self.n_double.then_some(true),
            routes: self.routes,
            format: self.format,
            out: self.out.clone(),
            degenerate_exponent_zero: self.degenerate_exponent_zero.then_some(true),
            exact_ceiling: self.exact_ceiling,
            crw_exponent: None,
            crw_scale: None,
        };
        Ok(file.merge(flags))
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sweep(raw: RawConfig, quantum: Option<bool>) -> Result<(), Failure> {
    let mut raw = raw;
    if let Some(q) = quantum {
        let default = if q { Family::QwR } else { Family::CrwR };
        let family = *raw.family.get_or_insert(default);
        if family.is_quantum() != q {
            return Err(WalkError::Config(format!(
                "family {family} does not belong to this subcommand"
            ))
            .into());
        }
    }
    let cfg = SweepConfig::from_raw(&raw)?;
    let skipped = cfg.exact_skipped();
    if !skipped.is_empty() {
        eprintln!(
            "warning: exact route skipped for {} final time(s) above the ceiling {} (first: {})",
            skipped.len(),
            cfg.exact_ceiling,
            skipped[0]
        );
    }
    let reports = run_sweep(&cfg)?;
    emit(&render_reports(&reports, cfg.format), cfg.out.as_deref())
}

fn render_rate(fit: &RateEstimate, format: OutputFormat) -> String {
    match format {
        OutputFormat::Csv => format!("slope,residual,points\n{:.16e},{:.16e},{}\n", fit.slope, fit.residual, fit.points),
        OutputFormat::Json => format!("{}\n", serde_json::to_string_pretty(fit).expect("fit serializes")),
    }
}

fn rate(args: &RateArgs) -> Result<(), Failure> {
    let raw = args.common.raw()?;
    let format = raw.format.unwrap_or_default();
    let reports = match &args.input {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
            let mut reports =
                if text.trim_start().starts_with('[') { reports_from_json(&text)? } else { reports_from_csv(&text)? };
            let family = raw.family.ok_or_else(|| WalkError::Config("--input needs --family".into()))?;
            reports.iter_mut().for_each(|r| r.track(family));
            reports
        }
        None => run_sweep(&SweepConfig::from_raw(&raw)?)?,
    };
    let fit = estimate_rate(&reports)?;
    emit(&render_rate(&fit, format), raw.out.as_deref())
}

fn compare(args: &CompareArgs) -> Result<(), Failure> {
    let mut raw = args.common.raw()?;
    raw.crw_exponent = args.crw_exponent.or(raw.crw_exponent);
    raw.crw_scale = args.crw_scale.or(raw.crw_scale);
    let cfg = CompareConfig::from_raw(&raw)?;
    let cmp = compare_models(&cfg)?;
    let format = cfg.quantum.format;
    if format == OutputFormat::Csv {
        eprintln!(
            "qw slope {:.6}, crw slope {:.6}, ratio {:.6}",
            cmp.qw_rate.slope, cmp.crw_rate.slope, cmp.exponent_ratio
        );
    }
    emit(&render_comparison(&cmp, format), cfg.quantum.out.as_deref())
}

fn run(cli: Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::QwReturn(c) => sweep(c.raw()?, Some(true)),
        Command::CrwReturn(c) => sweep(c.raw()?, Some(false)),
        Command::Sweep(c) => sweep(c.raw()?, None),
        Command::Compare(args) => compare(args),
        Command::Rate(args) => rate(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Walk(e)) => {
            eprintln!("error: {e}");
            let code = match e {
                WalkError::Config(_) => 2,
                WalkError::RouteDisagreement { .. } => 3,
                _ => 4,
            };
            ExitCode::from(code)
        }
    }
}
