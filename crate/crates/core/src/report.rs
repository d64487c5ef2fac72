//! Cross-method comparison tables, `|psi|^2` overlays and grid convergence
//! studies, with their CSV and JSON serializations.

use std::fmt::Write as _;
use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::analytic::AnalyticGroundState;
use crate::eigen::{EigenSolution, Method};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::numerov::{NumerovConfig, Shooter, DEFAULT_GRID};
use crate::potential::PotentialModel;
use crate::spt::{self, SptLevel, SptOptions};
use crate::wkb::{self, WkbLevel};

pub const UNITS: &str = "hbar^2 k^2 / m";
/// Levels beyond this are outside the published comparison.
pub const REFERENCE_LEVELS: usize = 8;

/// Everything the solvers need, shared across methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub v0: f64,
    pub n_grid: usize,
    pub numerov: NumerovConfig,
    pub wkb_tol: f64,
    pub spt: SptOptions,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            v0: 1.0,
            n_grid: DEFAULT_GRID,
            numerov: NumerovConfig::default(),
            wkb_tol: wkb::DEFAULT_TOL,
            spt: SptOptions::default(),
        }
    }
}

impl SolverConfig {
    pub fn model(&self) -> Result<PotentialModel> {
        PotentialModel::new(self.v0)
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.n_grid)
    }

    /// Numerov states for levels `0..count`.
    pub fn numerov_spectrum(&self, count: usize) -> Result<Vec<EigenSolution>> {
        let model = self.model()?;
        let grid = self.grid()?;
        Shooter::new(&model, &grid, self.numerov)?.solve_spectrum(count)
    }

    pub fn wkb_level(&self, n: usize) -> Result<WkbLevel> {
        wkb::quantize(&self.model()?, n, self.wkb_tol)
    }

    pub fn spt_level(&self, n: usize) -> Result<SptLevel> {
        self.require_unit_strength("spt", n)?;
        Ok(spt::total_energy_with(n, self.spt))
    }

    fn require_unit_strength(&self, method: &'static str, level: usize) -> Result<()> {
        if self.v0 == 1.0 {
            Ok(())
        } else {
            Err(Error::Unsupported { method, level })
        }
    }

    /// One normalized state of `level` by `method` on this config's grid.
    pub fn solve_state(&self, method: Method, level: usize) -> Result<EigenSolution> {
        let grid = self.grid()?;
        match method {
            Method::Numerov => {
                let mut states = self.numerov_spectrum(level + 1)?;
                Ok(states.swap_remove(level))
            }
            Method::Wkb => {
                let model = self.model()?;
                let l = wkb::quantize(&model, level, self.wkb_tol)?;
                wkb::wkb_wavefunction(&model, &l, &grid)
            }
            Method::Spt => {
                self.require_unit_strength("spt", level)?;
                spt::perturbed_state_with(level, &grid, self.spt)
            }
            Method::Analytic => {
                if level != 0 {
                    return Err(Error::Unsupported {
                        method: "analytic",
                        level,
                    });
                }
                self.require_unit_strength("analytic", level)?;
                AnalyticGroundState::new().eigen_solution(&grid)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub wkb: Option<f64>,
    pub spt: Option<f64>,
    pub numerov: Option<f64>,
    /// `wkb - numerov`
    pub wkb_delta: Option<f64>,
    /// `spt - numerov`
    pub spt_delta: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellError {
    pub n: usize,
    pub method: Method,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub units: String,
    pub rows: Vec<ComparisonRow>,
    pub config: SolverConfig,
    pub extrapolated: bool,
    pub errors: Vec<CellError>,
}

/// WKB, SPT and Numerov energies for each level in `levels`. A failing
/// solver leaves its cells empty and records the error.
pub fn build_table(levels: Range<usize>, config: &SolverConfig) -> ComparisonTable {
    let mut errors = Vec::new();
    let numerov: Vec<Option<f64>> = match config.numerov_spectrum(levels.end) {
        Ok(states) => levels.clone().map(|n| Some(states[n].energy)).collect(),
        Err(e) => {
            for n in levels.clone() {
                errors.push(CellError {
                    n,
                    method: Method::Numerov,
                    message: e.to_string(),
                });
            }
            vec![None; levels.len()]
        }
    };
    let mut rows = Vec::with_capacity(levels.len());
    for (n, reference) in levels.clone().zip(numerov) {
        let mut cell = |method: Method, r: Result<f64>| match r {
            Ok(v) => Some(v),
            Err(e) => {
                errors.push(CellError {
                    n,
                    method,
                    message: e.to_string(),
                });
                None
            }
        };
        let wkb = cell(Method::Wkb, config.wkb_level(n).map(|l| l.energy));
        let spt = cell(Method::Spt, config.spt_level(n).map(|l| l.total));
        let delta = |v: Option<f64>| v.zip(reference).map(|(a, b)| a - b);
        rows.push(ComparisonRow {
            n,
            wkb,
            spt,
            numerov: reference,
            wkb_delta: delta(wkb),
            spt_delta: delta(spt),
        });
    }
    errors.sort_by_key(|e| e.n);
    ComparisonTable {
        units: UNITS.to_string(),
        rows,
        config: config.clone(),
        extrapolated: levels.end > REFERENCE_LEVELS,
        errors,
    }
}

fn cell_fixed(v: Option<f64>, decimals: usize) -> String {
    v.map(|v| format!("{v:.decimals$}")).unwrap_or_default()
}

fn cell_full(v: Option<f64>) -> String {
    v.map(|v| format!("{v:?}")).unwrap_or_default()
}

impl ComparisonTable {
    /// `n,wkb,spt,numerov` with four decimals.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,wkb,spt,numerov\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.n,
                cell_fixed(r.wkb, 4),
                cell_fixed(r.spt, 4),
                cell_fixed(r.numerov, 4)
            );
        }
        out
    }

    /// Same columns at full round-trip precision.
    pub fn to_csv_full(&self) -> String {
        let mut out = String::from("n,wkb,spt,numerov\n");
        for r in &self.rows {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                r.n,
                cell_full(r.wkb),
                cell_full(r.spt),
                cell_full(r.numerov)
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }
}

/// Aligned `|psi|^2` curves of one level from several methods.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigurePanel {
    pub label: String,
    pub level: usize,
    pub methods: Vec<Method>,
    pub energies: Vec<f64>,
    pub x: Vec<f64>,
    pub densities: Vec<Vec<f64>>,
}

impl FigurePanel {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x");
        for m in &self.methods {
            out.push(',');
            out.push_str(m.as_str());
        }
        out.push('\n');
        for (k, x) in self.x.iter().enumerate() {
            let _ = write!(out, "{x:?}");
            for col in &self.densities {
                let _ = write!(out, ",{:?}", col[k]);
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("panel serializes")
    }

    pub fn column(&self, method: Method) -> Option<&[f64]> {
        self.methods
            .iter()
            .position(|m| *m == method)
            .map(|i| self.densities[i].as_slice())
    }
}

pub fn figure_panel(
    label: &str,
    level: usize,
    methods: &[Method],
    config: &SolverConfig,
) -> Result<FigurePanel> {
    let grid = config.grid()?;
    let mut energies = Vec::with_capacity(methods.len());
    let mut densities = Vec::with_capacity(methods.len());
    for &m in methods {
        let s = config.solve_state(m, level)?;
        energies.push(s.energy);
        densities.push(s.density());
    }
    Ok(FigurePanel {
        label: label.to_string(),
        level,
        methods: methods.to_vec(),
        energies,
        x: grid.nodes().to_vec(),
        densities,
    })
}

/// The four standard overlays: ground state (analytic, SPT, Numerov),
/// first excited (SPT, Numerov), sixth and seventh excited (WKB, Numerov).
pub fn figure_panels(config: &SolverConfig) -> Result<Vec<FigurePanel>> {
    use Method::*;
    let specs: [(&str, usize, &[Method]); 4] = [
        ("a", 0, &[Analytic, Spt, Numerov]),
        ("b", 1, &[Spt, Numerov]),
        ("c", 6, &[Wkb, Numerov]),
        ("d", 7, &[Wkb, Numerov]),
    ];
    specs
        .iter()
        .map(|(label, level, methods)| figure_panel(label, *level, methods, config))
        .collect()
}

/// `sqrt(int (a - b)^2 dx)` of two curves on the grid.
pub fn l2_distance(grid: &Grid, a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    grid.norm_sq(&diff).sqrt()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub n_grid: usize,
    pub h: f64,
    pub energy: f64,
    pub error: f64,
    /// `log2(err(2h) / err(h))`-style order against the previous row.
    pub observed_order: Option<f64>,
}

/// Numerov energy of `level` on each grid. Errors are taken against the
/// exact `1/2` for the unit-well ground state, otherwise against the finest
/// grid.
/// Bisection tolerance used by [`convergence_study`].
pub const STUDY_TOL: f64 = 1e-15;

pub fn convergence_study(
    level: usize,
    grid_sizes: &[usize],
    config: &SolverConfig,
) -> Result<Vec<ConvergenceRow>> {
    if grid_sizes.len() < 2 {
        return Err(Error::InvalidParameter(
            "a convergence study needs at least two grids".into(),
        ));
    }
    let mut sizes = grid_sizes.to_vec();
    sizes.sort_unstable();
    let model = config.model()?;
    // the discretization error must not hide under the bisection tolerance
    let numerov = NumerovConfig {
        tol: config.numerov.tol.min(STUDY_TOL),
        ..config.numerov
    };
    let mut energies = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let grid = Grid::new(n)?;
        let states = Shooter::new(&model, &grid, numerov)?.solve_spectrum(level + 1)?;
        energies.push((grid.step(), states[level].energy));
    }
    let exact = (level == 0 && config.v0 == 1.0).then_some(0.5);
    let reference = exact.unwrap_or_else(|| energies.last().expect("non-empty").1);
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(sizes.len());
    for (i, (&n, &(h, e))) in sizes.iter().zip(&energies).enumerate() {
        let error = (e - reference).abs();
        let observed_order = if i == 0 {
            None
        } else {
            let prev = &rows[i - 1];
            let usable = error > 0.0 && prev.error > 0.0;
            usable.then(|| (prev.error / error).ln() / (prev.h / h).ln())
        };
        rows.push(ConvergenceRow {
            n_grid: n,
            h,
            energy: e,
            error,
            observed_order,
        });
    }
    Ok(rows)
}

pub fn convergence_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("n_grid,h,energy,error,observed_order\n");
    for r in rows {
        let order = r
            .observed_order
            .map(|o| format!("{o:?}"))
            .unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{}",
            r.n_grid, r.h, r.energy, r.error, order
        );
    }
    out
}

/// `n,energy,nodes,parity`.
pub fn spectrum_csv(states: &[EigenSolution]) -> String {
    let mut out = String::from("n,energy,nodes,parity\n");
    for s in states {
        let _ = writeln!(
            out,
            "{},{:?},{},{}",
            s.level,
            s.energy,
            s.node_count,
            s.parity.as_str()
        );
    }
    out
}

/// `x,psi,psi_sq` for one state.
pub fn wavefunction_csv(state: &EigenSolution, grid: &Grid) -> String {
    let mut out = String::from("x,psi,psi_sq\n");
    for (x, p) in grid.nodes().iter().zip(&state.wavefunction) {
        let _ = writeln!(out, "{x:?},{p:?},{:?}", p * p);
    }
    out
}

/// `n,energy,x1,x2,action`.
pub fn wkb_levels_csv(levels: &[WkbLevel]) -> String {
    let mut out = String::from("n,energy,x1,x2,action\n");
    for l in levels {
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{:?}",
            l.level, l.energy, l.turning_points.0, l.turning_points.1, l.action
        );
    }
    out
}

/// `n,e0,e1,e2,total`.
pub fn spt_csv(levels: &[SptLevel]) -> String {
    let mut out = String::from("n,e0,e1,e2,total\n");
    for l in levels {
        let _ = writeln!(
            out,
            "{},{:?},{:?},{:?},{:?}",
            l.level, l.e0, l.e1, l.e2, l.total
        );
    }
    out
}

/// `x,v` with twelve significant digits.
pub fn profile_csv(rows: &[(f64, f64)]) -> String {
    let mut out = String::from("x,v\n");
    for (x, v) in rows {
        let _ = writeln!(out, "{},{}", significant(*x, 12), significant(*v, 12));
    }
    out
}

/// `v` rounded to `digits` significant digits, plain notation when the
/// decimal exponent is moderate.
pub fn significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    let decimals = digits as i32 - 1 - exp;
    if (0..=17).contains(&decimals) {
        format!("{v:.prec$}", prec = decimals as usize)
    } else {
        format!("{v:.prec$e}", prec = digits - 1)
    }
}
