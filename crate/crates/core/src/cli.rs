//! The `repscan` command line.
//!
//! Option values come from flags, then from an optional `key = value`
//! config file (`--config`), then from built-in defaults. Exit codes:
//! 0 on success, 1 when a computation fails, 2 for usage or config errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::cumulants::{cumulants_direct, cumulants_from_powers, CumulantVector, MAX_ORDER};
use crate::entropy::{
    entropy_power_curve, renyi_entropy, renyi_entropy_power, tsallis_entropy, Base, Convention,
};
use crate::estimation::{run_suite, CheckTolerances, Suite, SuiteParams};
use crate::grid::{Axis, GridSpec};
use crate::infodist::{info_pdf_histogram, moment_identity_check};
use crate::io::{self, Cell, GridData};
use crate::reconstruct::{scan, GammaReference, ScanResult, SeriesMethod};
use crate::states::{self, CatStateParams};
use crate::{fixtures, Error};

pub const THREADS_ENV: &str = "REPSCAN_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

#[derive(Debug, Parser)]
#[command(
    name = "repscan",
    version,
    about = "Entropy powers, inequality checks and information scans on gridded densities"
)]
pub struct Cli {
    /// key = value file supplying option defaults.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads, 0 = all cores. Overrides REPSCAN_THREADS.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a state on a grid.
    State(StateArgs),
    /// Rényi and Tsallis entropies of order q.
    Entropy(EntropyArgs),
    /// Entropy powers N_{1+kΔ}, k = 0..m−1, as CSV.
    PowerCurve(PowerCurveArgs),
    /// Cumulants of the information random variable.
    Cumulants(CumulantsArgs),
    /// Histogram of the information density, as CSV.
    Infodist(InfodistArgs),
    /// Check ∫𝓕^p against E[2^{−(p−1)I}].
    CheckMoment(CheckMomentArgs),
    /// Run inequality checks.
    Verify(VerifyArgs),
    /// Entropy-power ladder → cumulants → series reconstruction.
    Scan(ScanArgs),
    /// Write the figure data files.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(subcommand)]
    pub kind: StateKind,
}

#[derive(Debug, Subcommand)]
pub enum StateKind {
    Cat(CatArgs),
    Gaussian(GaussianArgs),
    Uniform(UniformArgs),
}

#[derive(Debug, Args)]
pub struct GridArgs {
    /// Axis as min,max,count; repeat for each dimension.
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Vec<AxisArg>,
    /// Write a wavefunction instead of a density.
    #[arg(long)]
    pub wavefunction: bool,
    #[arg(long)]
    pub hbar: Option<f64>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CatArgs {
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub theta: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct GaussianArgs {
    /// Isotropic variance.
    #[arg(long)]
    pub sigma2: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct UniformArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    #[command(flatten)]
    pub grid: GridArgs,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub base: Option<String>,
}

#[derive(Debug, Args)]
pub struct PowerCurveArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CumulantsArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// gldf or direct.
    #[arg(long)]
    pub method: Option<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InfodistArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckMomentArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub p: Option<f64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Treat the input as a wavefunction; enables the stam and repur checks.
    #[arg(long)]
    pub wavefunction: bool,
    #[arg(long)]
    pub suite: Option<String>,
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long)]
    pub stam_r: Option<f64>,
    #[arg(long)]
    pub repur_p: Option<f64>,
    #[arg(long)]
    pub epi_r: Option<f64>,
    #[arg(long)]
    pub epi_lambda: Option<f64>,
    #[arg(long)]
    pub check_tol: Option<f64>,
    #[arg(long)]
    pub saturation_tol: Option<f64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub m: Option<usize>,
    /// gram_charlier_a or edgeworth.
    #[arg(long)]
    pub method: Option<String>,
    /// Reconstruction on the truth bins.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Histogram of the information values.
    #[arg(long)]
    pub truth: Option<PathBuf>,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FiguresArgs {
    #[arg(long, default_value = ".")]
    pub out_dir: PathBuf,
}

/// `min,max,count`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisArg(pub Axis);

impl FromStr for AxisArg {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [min, max, count] = parts[..] else {
            return Err(format!("grid {s:?} is not min,max,count"));
        };
        let num = |t: &str| {
            t.parse::<f64>()
                .map_err(|_| format!("bad number {t:?} in grid {s:?}"))
        };
        let count = count
            .parse::<usize>()
            .map_err(|_| format!("bad count {count:?} in grid {s:?}"))?;
        let (min, max) = (num(min)?, num(max)?);
        if !(min < max) || count < 8 {
            return Err(format!("grid {s:?} needs min < max and count >= 8"));
        }
        Ok(AxisArg(Axis::new(min, max, count)))
    }
}

const CONFIG_KEYS: &[&str] = &[
    "alpha",
    "base",
    "bins",
    "check_tol",
    "delta",
    "epi_lambda",
    "epi_r",
    "grid",
    "hbar",
    "hi",
    "lo",
    "m",
    "method",
    "nu",
    "p",
    "q",
    "repur_p",
    "saturation_tol",
    "sigma2",
    "stam_r",
    "suite",
    "theta",
    "threads",
];

/// Values read from a `key = value` file. `#` starts a comment.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                config_err(format!("config line {}: expected key = value", n + 1))
            })?;
            let key = key.trim().replace('-', "_");
            if !CONFIG_KEYS.contains(&key.as_str()) {
                return Err(config_err(format!(
                    "config line {}: unknown key {key:?}",
                    n + 1
                )));
            }
            entries.insert(key, value.trim().to_string());
        }
        Ok(ConfigFile { entries })
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Flag, then file, then default.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> CliResult<T> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.get(key) {
            Some(s) => s
                .parse()
                .map_err(|_| config_err(format!("config key {key}: bad value {s:?}"))),
            None => Ok(default),
        }
    }

    fn grid(&self, flag: &[AxisArg]) -> CliResult<Option<Vec<Axis>>> {
        if !flag.is_empty() {
            return Ok(Some(flag.iter().map(|a| a.0).collect()));
        }
        match self.get("grid") {
            None => Ok(None),
            Some(s) => s
                .split(';')
                .map(|a| a.parse::<AxisArg>().map(|a| a.0).map_err(config_err))
                .collect::<CliResult<Vec<_>>>()
                .map(Some),
        }
    }
}

fn parse_enum<T: FromStr>(s: &str, what: &str) -> CliResult<T> {
    s.parse()
        .map_err(|_| config_err(format!("unknown {what} {s:?}")))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> CliResult<()> {
    if ok {
        Ok(())
    } else {
        Err(config_err(msg()))
    }
}

fn positive(x: f64, name: &str) -> CliResult<()> {
    require(x > 0.0 && x.is_finite(), || {
        format!("{name} must be a positive number, got {x}")
    })
}

fn check_ladder(delta: f64, m: usize) -> CliResult<()> {
    require(delta > 0.0 && delta <= 0.05, || {
        format!("delta {delta} not in (0, 0.05]")
    })?;
    require((1..=MAX_ORDER).contains(&m), || {
        format!("m {m} not in 1..={MAX_ORDER}")
    })
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                CliError::Config(msg) => eprintln!("repscan: config error: {msg}"),
                CliError::Compute(err) => eprintln!("repscan: {}: {err}", err.name()),
            }
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> CliResult<()> {
    let cfg = match &cli.config {
        Some(p) => ConfigFile::load(p)?,
        None => ConfigFile::default(),
    };
    let env_threads = match std::env::var(THREADS_ENV) {
        Ok(s) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| config_err(format!("{THREADS_ENV}={s:?} is not a count")))?,
        ),
        Err(_) => None,
    };
    let threads = cfg.pick(cli.threads, "threads", env_threads.unwrap_or(0))?;
    // a pool may already exist when run is called twice in one process
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();

    match cli.command {
        Command::State(a) => state(a, &cfg),
        Command::Entropy(a) => entropy(a, &cfg),
        Command::PowerCurve(a) => power_curve(a, &cfg),
        Command::Cumulants(a) => cumulants(a, &cfg),
        Command::Infodist(a) => infodist(a, &cfg),
        Command::CheckMoment(a) => check_moment(a, &cfg),
        Command::Verify(a) => verify(a, &cfg),
        Command::Scan(a) => scan_cmd(a, &cfg),
        Command::Figures(a) => figures(&a.out_dir),
    }
}

fn default_grid() -> Vec<Axis> {
    vec![Axis::new(
        fixtures::GRID_MIN,
        fixtures::GRID_MAX,
        fixtures::GRID_COUNT,
    )]
}

fn state(a: StateArgs, cfg: &ConfigFile) -> CliResult<()> {
    let (g, data) = match a.kind {
        StateKind::Cat(c) => {
            let p = CatStateParams::new(
                cfg.pick(c.nu, "nu", 1.0)?,
                cfg.pick(c.alpha, "alpha", 5.0)?,
                cfg.pick(c.theta, "theta", 0.0)?,
            );
            require(p.nu >= 0.0 && p.alpha >= 0.0, || {
                "nu and alpha must be >= 0".into()
            })?;
            let axes = cfg.grid(&c.grid.grid)?;
            require(axes.as_ref().is_none_or(|a| a.len() == 1), || {
                "cat states are one-dimensional".into()
            })?;
            let hbar = cfg.pick(c.grid.hbar, "hbar", 1.0)?;
            positive(hbar, "hbar")?;
            let spec = match axes {
                Some(a) => GridSpec::new(a)?,
                None if c.grid.wavefunction => fixtures::cat_grid(&p).scaled(hbar.sqrt())?,
                None => fixtures::cat_grid(&p),
            };
            let data = if c.grid.wavefunction {
                GridData::Wave(states::cat_wavefunction(&p, &spec, hbar)?)
            } else {
                GridData::Density(states::cat_quadrature_density(&p, &spec)?)
            };
            (c.grid, data)
        }
        StateKind::Gaussian(c) => {
            let s2 = cfg.pick(c.sigma2, "sigma2", 1.0)?;
            positive(s2, "sigma2")?;
            let hbar = cfg.pick(c.grid.hbar, "hbar", 1.0)?;
            positive(hbar, "hbar")?;
            let spec = GridSpec::new(cfg.grid(&c.grid.grid)?.unwrap_or_else(default_grid))?;
            let data = if c.grid.wavefunction {
                require(spec.dim() == 1, || {
                    "Gaussian wavefunctions are one-dimensional".into()
                })?;
                GridData::Wave(states::gaussian_wavefunction(&spec, s2, hbar)?)
            } else {
                let dim = spec.dim();
                let cov = DMatrix::identity(dim, dim) * s2;
                GridData::Density(states::gaussian_density(&spec, &vec![0.0; dim], &cov)?)
            };
            (c.grid, data)
        }
        StateKind::Uniform(c) => {
            let lo = cfg.pick(c.lo, "lo", -0.5)?;
            let hi = cfg.pick(c.hi, "hi", 0.5)?;
            require(lo < hi, || format!("need lo < hi, got {lo} and {hi}"))?;
            let hbar = cfg.pick(c.grid.hbar, "hbar", 1.0)?;
            positive(hbar, "hbar")?;
            let spec = GridSpec::new(cfg.grid(&c.grid.grid)?.unwrap_or_else(default_grid))?;
            let d = states::uniform_density(&spec, &vec![(lo, hi); spec.dim()])?;
            let data = if c.grid.wavefunction {
                GridData::Wave(states::real_root(&d, hbar)?)
            } else {
                GridData::Density(d)
            };
            (c.grid, data)
        }
    };
    io::write_grid(&g.out, &data)?;
    Ok(())
}

fn load_density(path: &Path) -> CliResult<crate::GriddedDensity> {
    Ok(io::read_grid(path)?.density()?)
}

#[derive(Serialize)]
struct EntropyOut {
    q: f64,
    base: Base,
    renyi: f64,
    tsallis: f64,
    entropy_power: f64,
}

fn entropy(a: EntropyArgs, cfg: &ConfigFile) -> CliResult<()> {
    let q = cfg.pick(a.q, "q", 1.0)?;
    positive(q, "q")?;
    let base: Base = parse_enum(&cfg.pick(a.base, "base", "nats".to_string())?, "base")?;
    let d = load_density(&a.input)?;
    let out = EntropyOut {
        q,
        base,
        renyi: renyi_entropy(&d, q, base)?.value,
        tsallis: tsallis_entropy(&d, q)?.value,
        entropy_power: renyi_entropy_power(&d, q, Convention::NatsExp)?,
    };
    print!("{}", io::to_json(&out)?);
    Ok(())
}

fn power_curve(a: PowerCurveArgs, cfg: &ConfigFile) -> CliResult<()> {
    let delta = cfg.pick(a.delta, "delta", 0.01)?;
    let m = cfg.pick(a.m, "m", 6)?;
    check_ladder(delta, m)?;
    let d = load_density(&a.input)?;
    let curve = entropy_power_curve(&d, delta, m, Convention::NatsExp)?;
    let rows: Vec<Vec<Cell>> = curve
        .powers
        .iter()
        .map(|&(k, n)| vec![k.into(), curve.order(k).into(), n.into()])
        .collect();
    io::write_csv(&a.out, &["k", "order", "N"], &rows)?;
    Ok(())
}

fn warn_ill_conditioned(k: &CumulantVector) {
    if !k.ill_conditioned.is_empty() {
        eprintln!(
            "repscan: warning: IllConditioned orders {:?}",
            k.ill_conditioned
        );
    }
}

fn emit_json<T: Serialize>(path: Option<&Path>, value: &T) -> CliResult<()> {
    match path {
        Some(p) => io::write_json(p, value)?,
        None => print!("{}", io::to_json(value)?),
    }
    Ok(())
}

fn cumulants(a: CumulantsArgs, cfg: &ConfigFile) -> CliResult<()> {
    let delta = cfg.pick(a.delta, "delta", 0.01)?;
    let m = cfg.pick(a.m, "m", 5)?;
    check_ladder(delta, m)?;
    let method = cfg.pick(a.method, "method", "gldf".to_string())?;
    require(method == "gldf" || method == "direct", || {
        format!("unknown method {method:?}")
    })?;
    let d = load_density(&a.input)?;
    let k = if method == "direct" {
        cumulants_direct(&d, m)?
    } else {
        cumulants_from_powers(&entropy_power_curve(&d, delta, m, Convention::NatsExp)?, m)?
    };
    warn_ill_conditioned(&k);
    emit_json(a.json.as_deref(), &k)
}

fn infodist(a: InfodistArgs, cfg: &ConfigFile) -> CliResult<()> {
    let bins = cfg.pick(a.bins, "bins", 256)?;
    require(bins >= 16, || format!("bins {bins} must be >= 16"))?;
    let d = load_density(&a.input)?;
    let h = info_pdf_histogram(&d, bins)?;
    let rows: Vec<Vec<Cell>> = h
        .centers()
        .into_iter()
        .zip(h.densities())
        .map(|(c, g)| vec![c.into(), g.into()])
        .collect();
    io::write_csv(&a.out, &["center_bits", "density"], &rows)?;
    Ok(())
}

fn check_moment(a: CheckMomentArgs, cfg: &ConfigFile) -> CliResult<()> {
    let p = cfg.pick(a.p, "p", 1.5)?;
    positive(p, "p")?;
    let d = load_density(&a.input)?;
    let tol = CheckTolerances {
        check_tol: 1e-6,
        ..CheckTolerances::default()
    };
    emit_json(None, &moment_identity_check(&d, p, tol)?)
}

fn verify(a: VerifyArgs, cfg: &ConfigFile) -> CliResult<()> {
    let suite: Suite = parse_enum(&cfg.pick(a.suite, "suite", "all".to_string())?, "suite")?;
    let defaults = SuiteParams::default();
    let params = SuiteParams {
        q: cfg.pick(a.q, "q", defaults.q)?,
        stam_r: cfg.pick(a.stam_r, "stam_r", defaults.stam_r)?,
        epi_r: cfg.pick(a.epi_r, "epi_r", defaults.epi_r)?,
        epi_lambda: cfg.pick(a.epi_lambda, "epi_lambda", defaults.epi_lambda)?,
        repur_p: cfg.pick(a.repur_p, "repur_p", defaults.repur_p)?,
    };
    let td = CheckTolerances::default();
    let tol = CheckTolerances {
        check_tol: cfg.pick(a.check_tol, "check_tol", td.check_tol)?,
        saturation_tol: cfg.pick(a.saturation_tol, "saturation_tol", td.saturation_tol)?,
    };
    positive(params.q, "q")?;
    positive(params.stam_r, "stam_r")?;
    positive(params.epi_r, "epi_r")?;
    require(params.epi_lambda > 0.0 && params.epi_lambda < 1.0, || {
        "epi_lambda must lie in (0, 1)".into()
    })?;
    require(params.repur_p > 1.0, || "repur_p must be > 1".into())?;
    positive(tol.check_tol, "check_tol")?;
    positive(tol.saturation_tol, "saturation_tol")?;
    require(
        a.wavefunction || !matches!(suite, Suite::Stam | Suite::Repur),
        || "the stam and repur suites need --wavefunction".into(),
    )?;

    let data = io::read_grid(&a.input)?;
    let wave = if a.wavefunction {
        Some(
            data.wave()
                .cloned()
                .ok_or_else(|| config_err("--wavefunction given but the input is a density"))?,
        )
    } else {
        None
    };
    let d = data.density()?;
    let reports = run_suite(&d, wave.as_ref(), suite, params, tol)?;
    emit_json(a.json.as_deref(), &reports)
}

#[derive(Serialize)]
struct ScanReport<'a> {
    kappa: &'a [f64],
    reference: GammaReference,
    l1: f64,
    l1_reference_only: f64,
}

fn scan_rows(s: &ScanResult) -> Vec<Vec<Cell>> {
    s.truth
        .centers()
        .into_iter()
        .zip(s.truth.densities())
        .zip(
            s.series_binned
                .densities()
                .into_iter()
                .zip(s.reference_binned.densities()),
        )
        .map(|((c, t), (g, r))| vec![c.into(), t.into(), g.into(), r.into()])
        .collect()
}

fn scan_cmd(a: ScanArgs, cfg: &ConfigFile) -> CliResult<()> {
    let delta = cfg.pick(a.delta, "delta", 0.01)?;
    let m = cfg.pick(a.m, "m", 5)?;
    check_ladder(delta, m)?;
    require(m >= 2, || "scan needs m >= 2".into())?;
    let method: SeriesMethod = parse_enum(
        &cfg.pick(a.method, "method", "edgeworth".to_string())?,
        "method",
    )?;
    let d = load_density(&a.input)?;
    let s = scan(&d, delta, m, method)?;
    warn_ill_conditioned(&s.series.kappa);
    let centers = s.truth.centers();
    if let Some(p) = &a.out {
        let rows: Vec<Vec<Cell>> = centers
            .iter()
            .zip(s.series_binned.densities())
            .map(|(&c, g)| vec![c.into(), g.into()])
            .collect();
        io::write_csv(p, &["center_bits", "density"], &rows)?;
    }
    if let Some(p) = &a.truth {
        let rows: Vec<Vec<Cell>> = centers
            .iter()
            .zip(s.truth.densities())
            .map(|(&c, g)| vec![c.into(), g.into()])
            .collect();
        io::write_csv(p, &["center_bits", "density"], &rows)?;
    }
    let report = ScanReport {
        kappa: &s.series.kappa.values,
        reference: s.series.reference,
        l1: s.l1,
        l1_reference_only: s.l1_reference_only,
    };
    emit_json(a.report.as_deref(), &report)
}

pub const FIG1_FILE: &str = "fig1_bcs_density.csv";
pub const FIG2_FILE: &str = "fig2_ucs_scan.csv";

/// Writes both figure files into `dir`.
pub fn figures(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(Error::from)?;

    // BCS density next to the Gaussian with the same Shannon entropy power
    let bcs = fixtures::bcs()?;
    let n1 = renyi_entropy_power(&bcs, 1.0, Convention::NatsExp)?;
    let mean = bcs.mean()[0];
    let xs = bcs.spec().axis(0).coords();
    let gauss = |x: f64| {
        (-(x - mean).powi(2) / (2.0 * n1)).exp() / (2.0 * std::f64::consts::PI * n1).sqrt()
    };
    let rows: Vec<Vec<Cell>> = xs
        .iter()
        .zip(bcs.values())
        .map(|(&x, &f)| vec![x.into(), f.into(), gauss(x).into()])
        .collect();
    io::write_csv(&dir.join(FIG1_FILE), &["x", "bcs", "gaussian_n1"], &rows)?;

    let s = scan(&fixtures::ucs()?, 0.01, 5, SeriesMethod::Edgeworth)?;
    io::write_csv(
        &dir.join(FIG2_FILE),
        &["center_bits", "truth", "edgeworth", "reference"],
        &scan_rows(&s),
    )?;
    Ok(())
}
