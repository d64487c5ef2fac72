//! Command-line front end: `solve`, `compare`, `wavefunction`,
//! `convergence` and `profile`.
//!
//! Exit codes: 0 success, 1 solver failure, 2 usage error. In stdout mode
//! only the payload is written to stdout; diagnostics go to stderr.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io::Write;
use std::ops::Range;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::eigen::Method;
use crate::error::Error;
use crate::grid::Grid;
use crate::numerov::{NumerovConfig, WallTreatment, DEFAULT_GRID};
use crate::report::{self, SolverConfig};
use crate::spt;
use crate::wkb;

/// Environment variable naming the directory relative `--out` paths are
/// resolved against.
pub const OUT_DIR_ENV: &str = "COTWELL_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_SOLVER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "cotwell",
    version,
    about = "Bound states of the symmetric cotangent well"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    /// key=value file with defaults; command-line flags take precedence
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Well strength v0 (dimensionless)
    #[arg(long, global = true)]
    pub v0: Option<f64>,
    /// Numerov grid intervals N (even)
    #[arg(long, global = true)]
    pub n_grid: Option<usize>,
    /// Energy increment of the Numerov bracket scan
    #[arg(long, global = true)]
    pub scan_step: Option<f64>,
    /// Numerov bisection tolerance
    #[arg(long, global = true)]
    pub bisect_tol: Option<f64>,
    /// WKB quantization tolerance on the action
    #[arg(long, global = true)]
    pub wkb_tol: Option<f64>,
    /// Wall treatment of the Numerov shooter
    #[arg(long, global = true, value_enum)]
    pub wall: Option<WallArg>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; standard output when absent
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Energies of a range of levels by one method
    Solve {
        #[arg(long, value_enum, default_value = "numerov")]
        method: MethodArg,
        /// Level range `a..b` (half-open), `a..=b`, or a single level
        #[arg(long, default_value = "0..8")]
        levels: String,
    },
    /// WKB, SPT and Numerov energies side by side
    Compare {
        #[arg(long, default_value = "0..8")]
        levels: String,
    },
    /// |psi|^2 of one level from several methods on the Numerov grid
    Wavefunction {
        #[arg(long)]
        level: usize,
        /// Comma-separated list of numerov, wkb, spt, analytic
        #[arg(long, default_value = "numerov")]
        methods: String,
    },
    /// Numerov energy of one level against grid size
    Convergence {
        #[arg(long, default_value_t = 0)]
        level: usize,
        /// Comma-separated grid sizes
        #[arg(long, default_value = "500,1000,2000,4000")]
        grids: String,
    },
    /// Samples of the potential on the grid
    Profile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodArg {
    Numerov,
    Wkb,
    WkbClosed,
    Spt,
    Analytic,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WallArg {
    Frobenius,
    Capped,
}

impl From<WallArg> for WallTreatment {
    fn from(w: WallArg) -> Self {
        match w {
            WallArg::Frobenius => WallTreatment::Frobenius,
            WallArg::Capped => WallTreatment::Capped,
        }
    }
}

/// Resolved settings of one invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub v0: f64,
    pub n_grid: usize,
    pub scan_step: f64,
    pub bisect_tol: f64,
    pub wkb_tol: f64,
    pub wall: WallTreatment,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let numerov = NumerovConfig::default();
        Self {
            v0: 1.0,
            n_grid: DEFAULT_GRID,
            scan_step: numerov.scan_step,
            bisect_tol: numerov.tol,
            wkb_tol: wkb::DEFAULT_TOL,
            wall: WallTreatment::default(),
            format: Format::Csv,
            out: None,
        }
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Solver(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Solver(e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Parse `key = value` lines; `#` starts a comment.
pub fn parse_config_file(text: &str) -> Result<HashMap<String, String>, String> {
    let mut out = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", i + 1))?;
        out.insert(k.trim().replace('-', "_"), v.trim().to_string());
    }
    Ok(out)
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, Failure> {
    v.parse()
        .map_err(|_| usage(format!("config: invalid value `{v}` for `{key}`")))
}

impl RunConfig {
    fn resolve(args: &CommonArgs) -> Result<Self, Failure> {
        let mut cfg = RunConfig::default();
        if let Some(path) = &args.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            let map = parse_config_file(&text).map_err(usage)?;
            let mut keys: Vec<_> = map.keys().collect();
            keys.sort();
            for key in keys {
                let v = &map[key];
                match key.as_str() {
                    "v0" => cfg.v0 = parse_value(key, v)?,
                    "n_grid" => cfg.n_grid = parse_value(key, v)?,
                    "scan_step" => cfg.scan_step = parse_value(key, v)?,
                    "bisect_tol" => cfg.bisect_tol = parse_value(key, v)?,
                    "wkb_tol" => cfg.wkb_tol = parse_value(key, v)?,
                    "wall" => {
                        cfg.wall = WallArg::from_str(v, true)
                            .map_err(|_| usage(format!("config: unknown wall `{v}`")))?
                            .into()
                    }
                    "format" => {
                        cfg.format = Format::from_str(v, true)
                            .map_err(|_| usage(format!("config: unknown format `{v}`")))?
                    }
                    "out" => cfg.out = Some(PathBuf::from(v)),
                    other => return Err(usage(format!("config: unknown key `{other}`"))),
                }
            }
        }
        if let Some(v) = args.v0 {
            cfg.v0 = v;
        }
        if let Some(v) = args.n_grid {
            cfg.n_grid = v;
        }
        if let Some(v) = args.scan_step {
            cfg.scan_step = v;
        }
        if let Some(v) = args.bisect_tol {
            cfg.bisect_tol = v;
        }
        if let Some(v) = args.wkb_tol {
            cfg.wkb_tol = v;
        }
        if let Some(v) = args.wall {
            cfg.wall = v.into();
        }
        if let Some(v) = args.format {
            cfg.format = v;
        }
        if let Some(v) = &args.out {
            cfg.out = Some(v.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Failure> {
        if !(self.v0 > 0.0 && self.v0.is_finite()) {
            return Err(usage(format!("--v0 must be positive, got {}", self.v0)));
        }
        for (name, v) in [
            ("--scan-step", self.scan_step),
            ("--bisect-tol", self.bisect_tol),
            ("--wkb-tol", self.wkb_tol),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(usage(format!("{name} must be positive, got {v}")));
            }
        }
        Grid::new(self.n_grid).map_err(|e| usage(format!("--n-grid: {e}")))?;
        Ok(())
    }

    pub fn solver_config(&self) -> SolverConfig {
        SolverConfig {
            v0: self.v0,
            n_grid: self.n_grid,
            numerov: NumerovConfig {
                scan_step: self.scan_step,
                tol: self.bisect_tol,
                wall: self.wall,
                ..NumerovConfig::default()
            },
            wkb_tol: self.wkb_tol,
            spt: spt::SptOptions::default(),
        }
    }

    fn out_path(&self) -> Option<PathBuf> {
        let out = self.out.as_ref()?;
        if out.is_relative() {
            if let Some(dir) = std::env::var_os(OUT_DIR_ENV) {
                return Some(Path::new(&dir).join(out));
            }
        }
        Some(out.clone())
    }
}

/// Level range: `a..b` is half-open, `a..=b` inclusive, and `a` or `a..a`
/// name the single level `a`.
pub fn parse_levels(s: &str) -> Result<Range<usize>, String> {
    let s = s.trim();
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid level `{t}` in `{s}`"))
    };
    let range = if let Some((a, b)) = s.split_once("..=") {
        num(a)?..num(b)? + 1
    } else if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a == b {
            a..a + 1
        } else {
            a..b
        }
    } else {
        let a = num(s)?;
        a..a + 1
    };
    if range.is_empty() {
        return Err(format!("level range `{s}` is empty"));
    }
    Ok(range)
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| usage(format!("invalid {what} `{}`", t.trim())))
        })
        .collect()
}

/// Payload plus an optional full-precision companion file.
struct Output {
    body: String,
    companion: Option<String>,
}

impl Output {
    fn single(body: String) -> Self {
        Self {
            body,
            companion: None,
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("payload serializes");
    s.push('\n');
    s
}

fn cmd_solve(cfg: &RunConfig, method: MethodArg, levels: Range<usize>) -> Result<Output, Failure> {
    let solver = cfg.solver_config();
    let config_json = serde_json::to_value(&solver).expect("config serializes");
    let wrap = |levels: serde_json::Value| {
        to_json(&json!({
            "method": method,
            "units": report::UNITS,
            "levels": levels,
            "config": config_json,
        }))
    };
    let body = match method {
        MethodArg::Numerov => {
            let states = solver.numerov_spectrum(levels.end)?;
            let chosen = &states[levels.clone()];
            match cfg.format {
                Format::Csv => report::spectrum_csv(chosen),
                Format::Json => wrap(
                    chosen
                        .iter()
                        .map(|s| {
                            json!({"n": s.level, "energy": s.energy, "nodes": s.node_count, "parity": s.parity})
                        })
                        .collect(),
                ),
            }
        }
        MethodArg::Wkb => {
            let ls = levels
                .clone()
                .map(|n| solver.wkb_level(n))
                .collect::<Result<Vec<_>, _>>()?;
            match cfg.format {
                Format::Csv => report::wkb_levels_csv(&ls),
                Format::Json => wrap(serde_json::to_value(&ls).expect("levels serialize")),
            }
        }
        MethodArg::Spt => {
            let ls = levels
                .clone()
                .map(|n| solver.spt_level(n))
                .collect::<Result<Vec<_>, _>>()?;
            match cfg.format {
                Format::Csv => report::spt_csv(&ls),
                Format::Json => wrap(serde_json::to_value(&ls).expect("levels serialize")),
            }
        }
        MethodArg::WkbClosed | MethodArg::Analytic => {
            let mut rows = Vec::new();
            for n in levels.clone() {
                let e = if method == MethodArg::WkbClosed {
                    if cfg.v0 != 1.0 {
                        return Err(Error::Unsupported {
                            method: "wkb-closed",
                            level: n,
                        }
                        .into());
                    }
                    wkb::closed_form_energy(n)?
                } else {
                    solver.solve_state(Method::Analytic, n)?.energy
                };
                rows.push((n, e));
            }
            match cfg.format {
                Format::Csv => {
                    let mut s = String::from("n,energy\n");
                    for (n, e) in &rows {
                        let _ = writeln!(s, "{n},{e:?}");
                    }
                    s
                }
                Format::Json => wrap(
                    rows.iter()
                        .map(|(n, e)| json!({"n": n, "energy": e}))
                        .collect(),
                ),
            }
        }
        MethodArg::All => {
            let table = report::build_table(levels.clone(), &solver);
            if let Some(err) = table.errors.first() {
                return Err(Failure::Solver(format!(
                    "{} level {}: {}",
                    err.method.as_str(),
                    err.n,
                    err.message
                )));
            }
            let mut rows = Vec::new();
            for r in &table.rows {
                for (m, v) in [("numerov", r.numerov), ("wkb", r.wkb), ("spt", r.spt)] {
                    rows.push((r.n, m, v.unwrap_or(f64::NAN)));
                }
            }
            match cfg.format {
                Format::Csv => {
                    let mut s = String::from("n,method,energy\n");
                    for (n, m, e) in &rows {
                        let _ = writeln!(s, "{n},{m},{e:?}");
                    }
                    s
                }
                Format::Json => wrap(
                    rows.iter()
                        .map(|(n, m, e)| json!({"n": n, "method": m, "energy": e}))
                        .collect(),
                ),
            }
        }
    };
    Ok(Output::single(body))
}

fn cmd_compare(
    cfg: &RunConfig,
    levels: Range<usize>,
    stderr: &mut dyn Write,
) -> Result<Output, Failure> {
    let table = report::build_table(levels, &cfg.solver_config());
    for e in &table.errors {
        let _ = writeln!(
            stderr,
            "warning: {} level {}: {}",
            e.method.as_str(),
            e.n,
            e.message
        );
    }
    if table.extrapolated {
        let _ = writeln!(
            stderr,
            "note: levels beyond {} extend past the reference table",
            report::REFERENCE_LEVELS
        );
    }
    Ok(match cfg.format {
        Format::Csv => Output {
            body: table.to_csv(),
            companion: Some(table.to_csv_full()),
        },
        Format::Json => {
            let mut body = table.to_json();
            body.push('\n');
            Output::single(body)
        }
    })
}

fn cmd_wavefunction(cfg: &RunConfig, level: usize, methods: &str) -> Result<Output, Failure> {
    let methods: Vec<Method> = parse_list(methods, "method")?;
    if methods.is_empty() {
        return Err(usage("--methods needs at least one method"));
    }
    let panel = report::figure_panel(
        &format!("level-{level}"),
        level,
        &methods,
        &cfg.solver_config(),
    )?;
    Ok(Output::single(match cfg.format {
        Format::Csv => panel.to_csv(),
        Format::Json => {
            let mut s = panel.to_json();
            s.push('\n');
            s
        }
    }))
}

fn cmd_convergence(cfg: &RunConfig, level: usize, grids: &str) -> Result<Output, Failure> {
    let sizes: Vec<usize> = parse_list(grids, "grid size")?;
    if sizes.len() < 2 {
        return Err(usage("--grids needs at least two grid sizes"));
    }
    for &n in &sizes {
        Grid::new(n).map_err(|e| usage(format!("--grids: {e}")))?;
    }
    let rows = report::convergence_study(level, &sizes, &cfg.solver_config())?;
    Ok(Output::single(match cfg.format {
        Format::Csv => report::convergence_csv(&rows),
        Format::Json => to_json(&json!({"level": level, "rows": rows})),
    }))
}

fn cmd_profile(cfg: &RunConfig) -> Result<Output, Failure> {
    let solver = cfg.solver_config();
    let rows = solver.model()?.export_profile(&solver.grid()?);
    Ok(Output::single(match cfg.format {
        Format::Csv => report::profile_csv(&rows),
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(x, v)| json!({"x": x, "v": v}))
                .collect::<Vec<_>>(),
        ),
    }))
}

fn companion_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("table");
    let ext = path.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    path.with_file_name(format!("{stem}_full.{ext}"))
}

fn execute(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let cfg = RunConfig::resolve(&cli.common)?;
    let output = match &cli.command {
        Command::Solve { method, levels } => {
            cmd_solve(&cfg, *method, parse_levels(levels).map_err(usage)?)?
        }
        Command::Compare { levels } => {
            cmd_compare(&cfg, parse_levels(levels).map_err(usage)?, stderr)?
        }
        Command::Wavefunction { level, methods } => cmd_wavefunction(&cfg, *level, methods)?,
        Command::Convergence { level, grids } => cmd_convergence(&cfg, *level, grids)?,
        Command::Profile => cmd_profile(&cfg)?,
    };
    match cfg.out_path() {
        Some(path) => {
            let io = |e: std::io::Error| {
                Failure::Solver(format!("cannot write {}: {e}", path.display()))
            };
            std::fs::write(&path, &output.body).map_err(io)?;
            if let Some(full) = &output.companion {
                std::fs::write(companion_path(&path), full).map_err(io)?;
            }
        }
        None => stdout
            .write_all(output.body.as_bytes())
            .map_err(|e| Failure::Solver(format!("cannot write output: {e}")))?,
    }
    Ok(())
}

/// Run the CLI on `args` (including the program name) and return the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(&cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Solver(msg)) => {
            let _ = writeln!(stderr, "solver error: {msg}");
            EXIT_SOLVER
        }
    }
}
