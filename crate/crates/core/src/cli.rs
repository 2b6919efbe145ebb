//! Command-line front end.
//!
//! Exit codes: 0 success, 1 I/O failure, 2 invalid arguments. Every command
//! validates its arguments and renders its whole output in memory before
//! anything is written, so a rejected invocation leaves no files behind.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::estimators::EstimatorKind;
use crate::model::{AnalystConfig, NatureConfig};
use crate::montecarlo::{simulate_risk, simulate_sweep};
use crate::plot::RatioChart;
use crate::risk::{risk_joint_closed, risk_marginal, sweep, Spacing, SweepRow};

pub const CSV_HEADER: &str = "s,risk_joint,risk_marginal,ratio";

pub const DEFAULT_FIGURE_SIGMA: f64 = 3.0;
pub const DEFAULT_S_MIN: f64 = 1.0;
pub const DEFAULT_S_MAX: f64 = 100.0;
pub const DEFAULT_POINTS: usize = 200;
pub const MC_OVERLAY_POINTS: usize = 10;

#[derive(Debug, Parser)]
#[command(
    name = "borrow-risk",
    version,
    about = "Risk of borrowing information from side data under a misspecified nuisance prior",
    allow_negative_numbers = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed-form risks and their ratio at one (s, sigma)
    Risk(RiskArgs),
    /// Monte Carlo risk estimate checked against the closed form
    Simulate(SimulateArgs),
    /// Closed-form risk ratio over a grid of s, as CSV
    Sweep(SweepArgs),
    /// Risk-ratio curve as CSV or SVG, optionally with simulated points
    Figure(FigureArgs),
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct RiskArgs {
    /// Analyst's marginal scale for x (s^2 = 1 + prior variance of mu)
    #[arg(long = "s")]
    pub s: f64,
    /// Nature's marginal scale for x (at least 1)
    #[arg(long)]
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Marginal,
    Joint,
}

impl From<KindArg> for EstimatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Marginal => EstimatorKind::MarginalY,
            KindArg::Joint => EstimatorKind::JointXY,
        }
    }
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    /// Required for the joint estimator
    #[arg(long = "s")]
    pub s: Option<f64>,
    #[arg(long)]
    pub sigma: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Svg,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct GridArgs {
    #[arg(long = "s-min")]
    pub s_min: Option<f64>,
    #[arg(long = "s-max")]
    pub s_max: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct SweepArgs {
    #[arg(long)]
    pub sigma: f64,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Log-spaced grid (the default)
    #[arg(long, conflicts_with = "linear")]
    pub log: bool,
    /// Evenly spaced grid
    #[arg(long)]
    pub linear: bool,
    /// Output path, `-` for standard output
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
#[command(allow_negative_numbers = true)]
pub struct FigureArgs {
    #[arg(long)]
    pub sigma: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Output path, `-` for standard output
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    /// Output format; inferred from the `--out` extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Also write the SVG chart to this path
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Overlay Monte Carlo ratios at evenly spaced grid points
    #[arg(long = "with-mc")]
    pub with_mc: bool,
    #[arg(long, default_value_t = 100_000)]
    pub n: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Domain(#[from] crate::error::Error),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Domain(_) => 2,
            CliError::Io { .. } => 1,
        }
    }
}

/// Where a rendered artifact goes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Destination {
    Stdout,
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSpec {
    pub destination: Destination,
    pub format: Format,
}

impl OutputSpec {
    pub fn resolve(path: &Path, format: Option<Format>) -> Self {
        let destination = if path.as_os_str() == "-" {
            Destination::Stdout
        } else {
            Destination::File(path.to_path_buf())
        };
        let inferred = match &destination {
            Destination::File(p)
                if p.extension().is_some_and(|e| e.eq_ignore_ascii_case("svg")) =>
            {
                Format::Svg
            }
            _ => Format::Csv,
        };
        Self {
            destination,
            format: format.unwrap_or(inferred),
        }
    }
}

/// Formats with 10 significant digits in plain decimal notation.
pub fn fmt_sig(value: f64) -> String {
    const DIGITS: i32 = 10;
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let mut magnitude = value.abs().log10().floor() as i32;
    let decimals = |m: i32| (DIGITS - 1 - m).max(0) as usize;
    let mut text = format!("{:.*}", decimals(magnitude), value);
    // rounding can carry into the next decade, e.g. 9.9999999999 -> 10.00000000
    let rounded: f64 = text.parse().unwrap_or(value);
    if rounded.abs() >= 10f64.powi(magnitude + 1) {
        magnitude += 1;
        text = format!("{:.*}", decimals(magnitude), value);
    }
    text
}

fn warn_unrealizable(err: &mut dyn Write, s: f64) {
    if s < 1.0 {
        let _ = writeln!(
            err,
            "warning: s = {s} < 1 implies prior variance s^2 - 1 = {} < 0; no realizable prior has this scale",
            s * s - 1.0
        );
    }
}

fn nature(sigma: f64) -> Result<NatureConfig, CliError> {
    Ok(NatureConfig::new(sigma)?)
}

fn analyst(s: f64) -> Result<AnalystConfig, CliError> {
    Ok(AnalystConfig::permissive(s)?)
}

struct ResolvedGrid {
    s_min: f64,
    s_max: f64,
    points: usize,
}

impl GridArgs {
    fn resolve(&self) -> ResolvedGrid {
        ResolvedGrid {
            s_min: self.s_min.unwrap_or(DEFAULT_S_MIN),
            s_max: self.s_max.unwrap_or(DEFAULT_S_MAX),
            points: self.points.unwrap_or(DEFAULT_POINTS),
        }
    }
}

pub fn render_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            fmt_sig(r.s),
            fmt_sig(r.risk_joint.value()),
            fmt_sig(r.risk_marginal.value()),
            fmt_sig(r.ratio)
        );
    }
    out
}

/// Grid indices for the simulated overlay: `count` evenly spaced positions
/// including both ends, deduplicated for short grids.
pub fn overlay_indices(points: usize, count: usize) -> Vec<usize> {
    if points == 0 || count == 0 {
        return Vec::new();
    }
    if count == 1 || points == 1 {
        return vec![0];
    }
    let mut idx: Vec<usize> = (0..count)
        .map(|i| (i * (points - 1) + (count - 1) / 2) / (count - 1))
        .collect();
    idx.dedup();
    idx
}

fn emit(spec: &Destination, body: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match spec {
        Destination::Stdout => stdout
            .write_all(body.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
        Destination::File(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
    }
}

pub fn cmd_risk(args: &RiskArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    let nature = nature(args.sigma)?;
    let analyst = analyst(args.s)?;
    warn_unrealizable(err, args.s);

    let marginal = risk_marginal().value();
    let joint = risk_joint_closed(&analyst, &nature).value.value();
    let mut report = String::new();
    let _ = writeln!(report, "s             = {}", fmt_sig(args.s));
    let _ = writeln!(report, "sigma         = {}", fmt_sig(args.sigma));
    let _ = writeln!(report, "risk_marginal = {}", fmt_sig(marginal));
    let _ = writeln!(report, "risk_joint    = {}", fmt_sig(joint));
    let _ = writeln!(report, "ratio         = {}", fmt_sig(joint / marginal));
    emit(&Destination::Stdout, &report, out)
}

pub fn cmd_simulate(
    args: &SimulateArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let kind = EstimatorKind::from(args.kind);
    let nature = nature(args.sigma)?;
    let analyst = match (kind, args.s) {
        (_, Some(s)) => analyst(s)?,
        (EstimatorKind::MarginalY, None) => analyst(1.0)?,
        (EstimatorKind::JointXY, None) => {
            return Err(CliError::Usage("--s is required for --kind joint".into()))
        }
    };
    if kind == EstimatorKind::JointXY {
        warn_unrealizable(err, analyst.s());
    }

    let mc = simulate_risk(kind, &analyst, &nature, args.n, args.seed, args.workers)?;
    let closed = match kind {
        EstimatorKind::MarginalY => risk_marginal().value(),
        EstimatorKind::JointXY => risk_joint_closed(&analyst, &nature).value.value(),
    };

    let mut report = String::new();
    let _ = writeln!(report, "estimator     = {kind}");
    if kind == EstimatorKind::JointXY {
        let _ = writeln!(report, "s             = {}", fmt_sig(analyst.s()));
    }
    let _ = writeln!(report, "sigma         = {}", fmt_sig(args.sigma));
    let _ = writeln!(report, "n             = {}", args.n);
    let _ = writeln!(report, "seed          = {}", args.seed);
    let _ = writeln!(report, "workers       = {}", args.workers);
    let _ = writeln!(report, "estimate      = {}", fmt_sig(mc.estimate.value()));
    let _ = writeln!(report, "std_error     = {}", fmt_sig(mc.std_error));
    let _ = writeln!(report, "closed_form   = {}", fmt_sig(closed));
    let _ = writeln!(report, "z_score       = {}", fmt_sig(mc.z_score(closed)));
    emit(&Destination::Stdout, &report, out)
}

pub fn cmd_sweep(
    args: &SweepArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = OutputSpec::resolve(&args.out, args.format);
    if spec.format == Format::Svg {
        return Err(CliError::Usage(
            "svg output is only available from the `figure` command".into(),
        ));
    }
    let nature = nature(args.sigma)?;
    let g = args.grid.resolve();
    let spacing = if args.linear {
        Spacing::Linear
    } else {
        Spacing::Log
    };
    let rows = sweep(&nature, g.s_min, g.s_max, g.points, spacing)?;
    warn_unrealizable(err, g.s_min);
    emit(&spec.destination, &render_csv(&rows), out)
}

pub fn cmd_figure(
    args: &FigureArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let spec = OutputSpec::resolve(&args.out, args.format);
    let sigma = args.sigma.unwrap_or(DEFAULT_FIGURE_SIGMA);
    let nature = nature(sigma)?;
    let g = args.grid.resolve();
    let rows = sweep(&nature, g.s_min, g.s_max, g.points, Spacing::Log)?;
    if args.with_mc && args.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if args.with_mc && args.workers == 0 {
        return Err(CliError::Usage("--workers must be at least 1".into()));
    }
    warn_unrealizable(err, g.s_min);

    let mut mc: Vec<Option<f64>> = vec![None; rows.len()];
    if args.with_mc {
        let idx = overlay_indices(rows.len(), MC_OVERLAY_POINTS);
        let s_points: Vec<f64> = idx.iter().map(|&i| rows[i].s).collect();
        let simulated = simulate_sweep(&nature, &s_points, args.n, args.seed, args.workers)?;
        for (&i, row) in idx.iter().zip(&simulated) {
            mc[i] = Some(row.ratio);
        }
    }

    let mut defaulted = Vec::new();
    if args.sigma.is_none() {
        defaulted.push("sigma");
    }
    if args.grid.s_min.is_none() {
        defaulted.push("s-min");
    }
    if args.grid.s_max.is_none() {
        defaulted.push("s-max");
    }
    if args.grid.points.is_none() {
        defaulted.push("points");
    }
    let mut meta = format!(
        "sigma={} s-min={} s-max={} points={} spacing=log",
        fmt_sig(sigma),
        fmt_sig(g.s_min),
        fmt_sig(g.s_max),
        g.points
    );
    if args.with_mc {
        let _ = write!(
            meta,
            " mc-n={} mc-seed={} mc-workers={}",
            args.n, args.seed, args.workers
        );
    }
    if !defaulted.is_empty() {
        let _ = write!(
            meta,
            "; illustrative implementer defaults used for: {}",
            defaulted.join(", ")
        );
    }

    let chart = || RatioChart {
        curve: rows.iter().map(|r| (r.s, r.ratio)).collect(),
        simulated: rows
            .iter()
            .zip(&mc)
            .filter_map(|(r, m)| m.map(|v| (r.s, v)))
            .collect(),
        title: format!("risk ratio vs s (sigma = {})", fmt_sig(sigma)),
        description: meta.clone(),
    };

    let primary = match spec.format {
        Format::Svg => chart().to_svg(),
        Format::Csv => render_figure_csv(&rows, &mc, args.with_mc, &meta),
    };
    let extra_svg = args.svg.as_ref().map(|p| (p, chart().to_svg()));

    emit(&spec.destination, &primary, out)?;
    if let Some((path, svg)) = extra_svg {
        emit(&Destination::File(path.clone()), &svg, out)?;
    }
    Ok(())
}

fn render_figure_csv(rows: &[SweepRow], mc: &[Option<f64>], with_mc: bool, meta: &str) -> String {
    let mut text = format!("# {meta}\n");
    if !with_mc {
        text.push_str(&render_csv(rows));
        return text;
    }
    let _ = writeln!(text, "{CSV_HEADER},mc_ratio");
    for (r, m) in rows.iter().zip(mc) {
        let _ = writeln!(
            text,
            "{},{},{},{},{}",
            fmt_sig(r.s),
            fmt_sig(r.risk_joint.value()),
            fmt_sig(r.risk_marginal.value()),
            fmt_sig(r.ratio),
            m.map(fmt_sig).unwrap_or_default()
        );
    }
    text
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match &cli.command {
        Command::Risk(a) => cmd_risk(a, out, err),
        Command::Simulate(a) => cmd_simulate(a, out, err),
        Command::Sweep(a) => cmd_sweep(a, out, err),
        Command::Figure(a) => cmd_figure(a, out, err),
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
