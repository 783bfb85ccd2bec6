//! Command-line front end: `certify`, `sweep` and `selftest`.
//!
//! Exit codes: 0 success, 1 parse or usage error, 2 slope outside the
//! covered interval (or `r = 0`, or a family without slope support),
//! 3 numeric failure or I/O error.

mod knot;
mod selftest;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::format::sig17;
use crate::knot_words::KnotSpec;
use crate::slopes::{
    solve_slope, sweep_branch, verify_certificate, Branch, BranchCurve, Slope, SlopeSample,
    SolveConfig, MIN_GRID,
};
use crate::tolerance::Tolerances;

pub use knot::parse_knot;
pub use selftest::{run_selftest, Check, SMOKE_KNOTS};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 1;
pub const EXIT_NOT_COVERED: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

pub const CSV_HEADER: &str = "param,theta,y,x,phi,slope,riley_residual";
pub const THREADS_ENV: &str = "ORDSLOPE_THREADS";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "ordslope", version, about = "Elliptic SL2(R) representations and Dehn surgery slopes of double twist knots")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct CommonArgs {
    /// Override the Riley residual tolerance.
    #[arg(long, value_name = "TOL")]
    tol_residual: Option<f64>,
    /// Override the root-finding tolerance on the branch parameter.
    #[arg(long, value_name = "TOL")]
    tol_param: Option<f64>,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve for a representation that kills the slope and print its certificate as JSON.
    Certify {
        /// Knot in Conway notation, e.g. "C(5,-4)".
        #[arg(long)]
        knot: String,
        /// Slope as "p/q" or an integer.
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Initial search grid size.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Sample phi and the slope function along the branches of a knot.
    Sweep {
        #[arg(long)]
        knot: String,
        /// Restrict to one branch (even_low, even_high, odd_primary, odd_reflected).
        #[arg(long)]
        branch: Option<Branch>,
        /// Grid points per branch.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run the invariant checks on small knots and print a pass/fail table.
    Selftest {
        /// Grid points per branch in the sweep checks.
        #[arg(long)]
        grid: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Certify,
    Sweep,
    Selftest,
}

/// Resolved settings for one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub command: CommandKind,
    pub knot: Option<String>,
    pub slope: Option<String>,
    pub branch: Option<Branch>,
    pub grid_size: Option<usize>,
    pub tol: Tolerances,
    pub out: Option<PathBuf>,
    pub format: OutputFormat,
}

impl CliConfig {
    pub fn new(command: CommandKind) -> Self {
        Self {
            command,
            knot: None,
            slope: None,
            branch: None,
            grid_size: None,
            tol: Tolerances::default(),
            out: None,
            format: match command {
                CommandKind::Sweep => OutputFormat::Csv,
                _ => OutputFormat::Json,
            },
        }
    }

    fn apply(mut self, common: CommonArgs) -> Self {
        if let Some(v) = common.tol_residual {
            self.tol.residual = v;
        }
        if let Some(v) = common.tol_param {
            self.tol.param = v;
        }
        self.out = common.out;
        self
    }
}

impl From<Cli> for CliConfig {
    fn from(cli: Cli) -> Self {
        match cli.command {
            Command::Certify { knot, slope, grid, format, common } => CliConfig {
                knot: Some(knot),
                slope: Some(slope),
                grid_size: grid,
                format,
                ..CliConfig::new(CommandKind::Certify)
            }
            .apply(common),
            Command::Sweep { knot, branch, grid, format, common } => CliConfig {
                knot: Some(knot),
                branch,
                grid_size: grid,
                format,
                ..CliConfig::new(CommandKind::Sweep)
            }
            .apply(common),
            Command::Selftest { grid, common } => {
                CliConfig { grid_size: grid, ..CliConfig::new(CommandKind::Selftest) }.apply(common)
            }
        }
    }
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self { code, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::InvalidInput(_) => EXIT_PARSE,
            Error::SlopeNotCovered { .. } | Error::ZeroSlope | Error::UnsupportedFamily(_) => {
                EXIT_NOT_COVERED
            }
            _ => EXIT_NUMERIC,
        };
        Failure::new(code, err.to_string())
    }
}

fn parse_inputs(cfg: &CliConfig) -> Result<KnotSpec, Failure> {
    let text = cfg.knot.as_deref().ok_or_else(|| Failure::new(EXIT_PARSE, "--knot is required"))?;
    parse_knot(text).map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))
}

fn check_tolerances(tol: &Tolerances) -> Result<(), Failure> {
    for (name, v) in [("tol-residual", tol.residual), ("tol-param", tol.param)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Failure::new(EXIT_PARSE, format!("--{name} must be positive, got {v}")));
        }
    }
    Ok(())
}

fn emit(cfg: &CliConfig, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_NUMERIC, format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Failure::new(EXIT_NUMERIC, format!("cannot write output: {e}"))),
    }
}

/// Solves and verifies the slope; on success writes the certificate JSON.
///
/// A certificate that fails verification is still written, with exit code 3.
pub fn cmd_certify(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    check_tolerances(&cfg.tol)?;
    if cfg.format != OutputFormat::Json {
        return Err(Failure::new(EXIT_PARSE, "certify only writes JSON"));
    }
    let spec = parse_inputs(cfg)?;
    let slope_text = cfg.slope.as_deref().ok_or_else(|| Failure::new(EXIT_PARSE, "--slope is required"))?;
    let r: Slope = slope_text.parse().map_err(|e: Error| Failure::new(EXIT_PARSE, e.to_string()))?;
    let mut solve = SolveConfig { tol: cfg.tol, ..SolveConfig::default() };
    if let Some(g) = cfg.grid_size {
        if g < MIN_GRID {
            return Err(Failure::new(EXIT_PARSE, format!("--grid must be at least {MIN_GRID}")));
        }
        solve.initial_grid = g;
        solve.max_grid = solve.max_grid.max(g);
    }
    let cert = solve_slope(&spec, r, &solve)?;
    let check = verify_certificate(&cert, &cfg.tol);
    let mut text = serde_json::to_string_pretty(&cert)
        .map_err(|e| Failure::new(EXIT_NUMERIC, e.to_string()))?;
    text.push('\n');
    emit(cfg, &text, out)?;
    if check.passed() {
        Ok(EXIT_OK)
    } else {
        Err(Failure::new(
            EXIT_NUMERIC,
            format!("certificate for r = {r} failed verification: {}", check.failures.join(", ")),
        ))
    }
}

/// One CSV row; floats carry 17 significant digits.
pub fn csv_row(s: &SlopeSample) -> String {
    [s.param, s.theta, s.y, s.x, s.phi, s.slope, s.riley_residual]
        .map(sig17)
        .join(",")
}

#[derive(Serialize)]
struct SweepBranch {
    branch: Branch,
    #[serde(with = "crate::format")]
    domain_lo: f64,
    #[serde(with = "crate::format")]
    domain_hi: f64,
    samples: Vec<SampleJson>,
}

#[derive(Serialize)]
struct SampleJson {
    #[serde(with = "crate::format")]
    param: f64,
    #[serde(with = "crate::format")]
    theta: f64,
    #[serde(with = "crate::format")]
    y: f64,
    #[serde(with = "crate::format")]
    x: f64,
    #[serde(with = "crate::format")]
    phi: f64,
    #[serde(with = "crate::format")]
    slope: f64,
    #[serde(with = "crate::format")]
    riley_residual: f64,
}

impl From<&SlopeSample> for SampleJson {
    fn from(s: &SlopeSample) -> Self {
        Self {
            param: s.param,
            theta: s.theta,
            y: s.y,
            x: s.x,
            phi: s.phi,
            slope: s.slope,
            riley_residual: s.riley_residual,
        }
    }
}

#[derive(Serialize)]
struct SweepJson {
    schema_version: &'static str,
    knot: String,
    spec: KnotSpec,
    branches: Vec<SweepBranch>,
}

pub const DEFAULT_SWEEP_GRID: usize = 256;

/// Samples each requested branch. CSV output has the fixed header followed by
/// `grid` rows per branch, branches in their natural order (low/primary first).
pub fn cmd_sweep(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    check_tolerances(&cfg.tol)?;
    let spec = parse_inputs(cfg)?;
    let grid = cfg.grid_size.unwrap_or(DEFAULT_SWEEP_GRID);
    if grid < MIN_GRID {
        return Err(Failure::new(EXIT_PARSE, format!("--grid must be at least {MIN_GRID}")));
    }
    let branches: Vec<Branch> = match cfg.branch {
        Some(b) => vec![b],
        None => Branch::all_for(spec.family).to_vec(),
    };
    let mut results = Vec::with_capacity(branches.len());
    for b in branches {
        let curve = BranchCurve::new(spec, b, cfg.tol.param)?;
        let samples = sweep_branch(&curve, grid, 0.0)?;
        results.push((curve, samples));
    }
    let text = match cfg.format {
        OutputFormat::Csv => {
            let mut text = String::from(CSV_HEADER);
            text.push('\n');
            for s in results.iter().flat_map(|(_, samples)| samples) {
                text.push_str(&csv_row(s));
                text.push('\n');
            }
            text
        }
        OutputFormat::Json => {
            let doc = SweepJson {
                schema_version: crate::slopes::SCHEMA_VERSION,
                knot: spec.to_string(),
                spec,
                branches: results
                    .iter()
                    .map(|(curve, samples)| SweepBranch {
                        branch: curve.branch(),
                        domain_lo: curve.domain().0,
                        domain_hi: curve.domain().1,
                        samples: samples.iter().map(SampleJson::from).collect(),
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| Failure::new(EXIT_NUMERIC, e.to_string()))?;
            text.push('\n');
            text
        }
    };
    emit(cfg, &text, out)?;
    Ok(EXIT_OK)
}

/// Runs the smoke checks and prints the table; exit 0 iff every check passes.
pub fn cmd_selftest(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let checks = run_selftest(&cfg.tol, cfg.grid_size.unwrap_or(selftest::DEFAULT_GRID));
    let text = selftest::render_table(&checks);
    emit(cfg, &text, out)?;
    if checks.iter().all(|c| c.passed) {
        Ok(EXIT_OK)
    } else {
        let failed = checks.iter().filter(|c| !c.passed).count();
        Err(Failure::new(EXIT_NUMERIC, format!("{failed} of {} checks failed", checks.len())))
    }
}

pub fn execute(cfg: &CliConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    match cfg.command {
        CommandKind::Certify => cmd_certify(cfg, out),
        CommandKind::Sweep => cmd_sweep(cfg, out),
        CommandKind::Selftest => cmd_selftest(cfg, out),
    }
}

/// Caps the global rayon pool from `ORDSLOPE_THREADS` if set.
fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::new(EXIT_PARSE, format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A second call in the same process (tests) finds the pool already built; that is fine.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = configure_threads().and_then(|()| execute(&CliConfig::from(cli), out));
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}
