//! Numerov shooting for `psi'' = -g(x) psi`, `g = 2 (eps - v(x))`, on the
//! uniform grid over `[-pi, pi]`.
//!
//! Integration starts at the left wall with `psi_0 = 0, psi_1 = seed` and
//! the eigenvalue condition is imposed at the right wall. Two wall
//! treatments are offered:
//!
//! * [`WallTreatment::Frobenius`] (default): the product `g psi` at each
//!   wall is replaced by its finite limit. Near a wall at distance `d` the
//!   cotangent well behaves like `pole / d`, the regular solution is
//!   `psi = t (d + c2 d^2 + c3 d^3 + ...)` and `g psi -> -2 pole t`. The
//!   shooting objective is the wall value `psi_N` the recurrence would
//!   produce with that limit. This keeps the scheme fourth order.
//! * [`WallTreatment::Capped`]: `g` at the walls comes from the potential's
//!   finite cap, `g_0 psi_0` is taken as zero and the objective is the last
//!   interior sample `psi_{N-1}`. The boundary is then misplaced by one
//!   step, so energies converge only at first order in `h`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{EigenSolution, Method};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::{Potential, WallExpansion};
use crate::roots;

pub use crate::eigen::normalize;

pub const DEFAULT_SEED: f64 = 1e-4;
pub const DEFAULT_SCAN_STEP: f64 = 1e-3;
pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_GRID: usize = 8000;
pub const DEFAULT_MAX_ENERGY: f64 = 100.0;
const OVERFLOW_LIMIT: f64 = 1e150;
const SCAN_CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WallTreatment {
    #[default]
    Frobenius,
    Capped,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumerovConfig {
    pub seed: f64,
    pub scan_step: f64,
    pub tol: f64,
    pub max_energy: f64,
    pub wall: WallTreatment,
}

impl Default for NumerovConfig {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            scan_step: DEFAULT_SCAN_STEP,
            tol: DEFAULT_TOL,
            max_energy: DEFAULT_MAX_ENERGY,
            wall: WallTreatment::Frobenius,
        }
    }
}

impl NumerovConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {v}"
                )))
            }
        };
        positive("seed", self.seed)?;
        positive("scan step", self.scan_step)?;
        positive("bisection tolerance", self.tol)?;
        positive("maximum energy", self.max_energy)
    }
}

/// Samples `psi_0 ..= psi_N` of one shot plus its node count.
#[derive(Debug, Clone, PartialEq)]
pub struct ShootingTrajectory {
    pub samples: Vec<f64>,
    /// `psi_N`. Under the Frobenius treatment this is the virtual wall
    /// value, which vanishes at an eigenvalue.
    pub terminal: f64,
    pub nodes: usize,
}

/// One Numerov advance:
/// `psi_{k+1} = [(2 - 5h^2 g_k/6) psi_k - (1 + h^2 g_{k-1}/12) psi_{k-1}] / (1 + h^2 g_{k+1}/12)`.
pub fn numerov_step(
    psi_k: f64,
    psi_km1: f64,
    g_km1: f64,
    g_k: f64,
    g_kp1: f64,
    h: f64,
) -> Result<f64> {
    let c = h * h / 12.0;
    let den = 1.0 + c * g_kp1;
    if den == 0.0 {
        return Err(Error::SingularStep { h, g: g_kp1 });
    }
    Ok(((2.0 - 10.0 * c * g_k) * psi_k - (1.0 + c * g_km1) * psi_km1) / den)
}

/// Cached potential samples for repeated shots on one grid.
#[derive(Debug, Clone)]
pub struct Shooter<'g> {
    grid: &'g Grid,
    potential: Vec<f64>,
    minimum: f64,
    wall: WallExpansion,
    config: NumerovConfig,
}

impl<'g> Shooter<'g> {
    pub fn new<P: Potential + ?Sized>(
        potential: &P,
        grid: &'g Grid,
        config: NumerovConfig,
    ) -> Result<Self> {
        config.validate()?;
        let samples = grid
            .nodes()
            .iter()
            .map(|&x| potential.value(x))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            potential: samples,
            minimum: potential.minimum(),
            wall: potential.wall(),
            config,
        })
    }

    pub fn grid(&self) -> &Grid {
        self.grid
    }

    pub fn config(&self) -> &NumerovConfig {
        &self.config
    }

    fn check_energy(&self, energy: f64) -> Result<()> {
        if energy > self.minimum {
            Ok(())
        } else {
            Err(Error::BelowMinimum {
                energy,
                minimum: self.minimum,
            })
        }
    }

    /// Regular wall solution per unit slope, evaluated one step in:
    /// `h + c2 h^2 + c3 h^3`.
    fn wall_shape(&self, energy: f64) -> f64 {
        let h = self.grid.step();
        let a = 2.0 * self.wall.pole;
        let b = 2.0 * (self.wall.constant - energy);
        let c2 = 0.5 * a;
        let c3 = (0.5 * a * a + b) / 6.0;
        h * (1.0 + h * (c2 + h * c3))
    }

    /// Shoot from the left wall at `energy`.
    pub fn integrate(&self, energy: f64) -> Result<ShootingTrajectory> {
        self.check_energy(energy)?;
        let n = self.grid.intervals();
        let h = self.grid.step();
        let c = h * h / 12.0;
        let g: Vec<f64> = self.potential.iter().map(|v| 2.0 * (energy - v)).collect();
        let mut psi = vec![0.0; n + 1];
        psi[1] = self.config.seed;

        let rescale = |psi: &mut [f64], upto: usize| {
            let s = psi[upto].abs();
            if s > OVERFLOW_LIMIT {
                for p in psi[..=upto].iter_mut() {
                    *p /= s;
                }
            }
        };

        match self.config.wall {
            WallTreatment::Frobenius => {
                let shape = self.wall_shape(energy);
                let left_limit = -2.0 * self.wall.pole * psi[1] / shape;
                let den = 1.0 + c * g[2];
                if den == 0.0 {
                    return Err(Error::SingularStep { h, g: g[2] });
                }
                psi[2] = ((2.0 - 10.0 * c * g[1]) * psi[1] - psi[0] - c * left_limit) / den;
                rescale(&mut psi, 2);
                for k in 2..n - 1 {
                    psi[k + 1] = numerov_step(psi[k], psi[k - 1], g[k - 1], g[k], g[k + 1], h)?;
                    rescale(&mut psi, k + 1);
                }
                let right_limit = -2.0 * self.wall.pole * psi[n - 1] / shape;
                psi[n] = (2.0 - 10.0 * c * g[n - 1]) * psi[n - 1]
                    - (1.0 + c * g[n - 2]) * psi[n - 2]
                    - c * right_limit;
            }
            WallTreatment::Capped => {
                // psi_0 = 0, so the g_0 psi_0 product drops out whatever g_0 is.
                for k in 1..n {
                    let g_km1 = if k == 1 { 0.0 } else { g[k - 1] };
                    psi[k + 1] = numerov_step(psi[k], psi[k - 1], g_km1, g[k], g[k + 1], h)?;
                    rescale(&mut psi, k + 1);
                }
            }
        }
        let nodes = crate::eigen::count_nodes(&psi);
        Ok(ShootingTrajectory {
            terminal: psi[n],
            samples: psi,
            nodes,
        })
    }

    /// Shooting objective normalized by the largest interior amplitude.
    pub fn mismatch(&self, energy: f64) -> Result<f64> {
        let t = self.integrate(energy)?;
        let n = self.grid.intervals();
        let peak = t.samples[1..n].iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let target = match self.config.wall {
            WallTreatment::Frobenius => t.terminal,
            WallTreatment::Capped => t.samples[n - 1],
        };
        Ok(target / peak)
    }

    /// Bisect the objective on a sign-changing bracket down to `config.tol`.
    pub fn find_eigenvalue(&self, lo: f64, hi: f64) -> Result<f64> {
        roots::bisect(|e| self.mismatch(e), lo, hi, self.config.tol)
    }

    /// Normalized eigenfunction at an already converged energy.
    pub fn eigen_solution(&self, energy: f64) -> Result<EigenSolution> {
        let mut t = self.integrate(energy)?;
        let n = self.grid.intervals();
        t.samples[n] = 0.0;
        let mut sol =
            EigenSolution::from_samples(0, energy, &t.samples, self.grid, Method::Numerov)?;
        sol.level = sol.node_count;
        Ok(sol)
    }

    /// Brackets of the first `count` sign changes found by scanning upward
    /// from just above the potential minimum.
    pub fn scan_brackets(&self, count: usize) -> Result<Vec<(f64, f64)>> {
        let step = self.config.scan_step;
        let start = self.minimum + step;
        let max_steps = ((self.config.max_energy - start) / step).floor().max(0.0) as usize;
        let mut brackets = Vec::with_capacity(count);
        let mut prev: Option<(f64, f64)> = None;
        let mut i = 0;
        while i <= max_steps && brackets.len() < count {
            let end = (i + SCAN_CHUNK).min(max_steps + 1);
            let values = (i..end)
                .into_par_iter()
                .map(|j| {
                    let e = start + j as f64 * step;
                    self.mismatch(e).map(|f| (e, f))
                })
                .collect::<Result<Vec<_>>>()?;
            for (e, f) in values {
                if let Some((pe, pf)) = prev {
                    if pf != 0.0 && (f == 0.0 || f.signum() != pf.signum()) {
                        brackets.push((pe, e));
                        if brackets.len() == count {
                            break;
                        }
                    }
                }
                prev = if f == 0.0 { None } else { Some((e, f)) };
            }
            i = end;
        }
        if brackets.len() < count {
            return Err(Error::TooFewLevels {
                found: brackets.len(),
                requested: count,
                max_energy: self.config.max_energy,
            });
        }
        Ok(brackets)
    }

    /// The lowest `n_levels` bound states, sorted by energy.
    pub fn solve_spectrum(&self, n_levels: usize) -> Result<Vec<EigenSolution>> {
        if n_levels == 0 {
            return Err(Error::InvalidParameter("need at least one level".into()));
        }
        let brackets = self.scan_brackets(n_levels)?;
        let mut levels = brackets
            .par_iter()
            .map(|&(lo, hi)| {
                let e = self.find_eigenvalue(lo, hi)?;
                self.eigen_solution(e)
            })
            .collect::<Result<Vec<_>>>()?;
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy));
        Ok(levels)
    }
}

/// Single shot with an explicit seed `psi_1`.
pub fn integrate<P: Potential + ?Sized>(
    potential: &P,
    grid: &Grid,
    energy: f64,
    seed: f64,
) -> Result<ShootingTrajectory> {
    let config = NumerovConfig {
        seed,
        ..NumerovConfig::default()
    };
    Shooter::new(potential, grid, config)?.integrate(energy)
}

pub fn terminal_mismatch<P: Potential + ?Sized>(
    potential: &P,
    grid: &Grid,
    energy: f64,
) -> Result<f64> {
    Shooter::new(potential, grid, NumerovConfig::default())?.mismatch(energy)
}

pub fn find_eigenvalue<P: Potential + ?Sized>(
    potential: &P,
    grid: &Grid,
    bracket: (f64, f64),
    tol: f64,
) -> Result<f64> {
    let config = NumerovConfig {
        tol,
        ..NumerovConfig::default()
    };
    Shooter::new(potential, grid, config)?.find_eigenvalue(bracket.0, bracket.1)
}

pub fn solve_spectrum<P: Potential + ?Sized>(
    potential: &P,
    grid: &Grid,
    n_levels: usize,
    scan_step: f64,
    tol: f64,
) -> Result<Vec<EigenSolution>> {
    let config = NumerovConfig {
        scan_step,
        tol,
        ..NumerovConfig::default()
    };
    Shooter::new(potential, grid, config)?.solve_spectrum(n_levels)
}
