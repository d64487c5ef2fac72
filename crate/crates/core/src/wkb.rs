//! Semiclassical levels of the well.
//!
//! Two quantization rules are provided:
//!
//! * the hard-wall rule over the whole box with the quadratic truncation of
//!   the potential, `int_{-pi}^{pi} p dx = n pi`, both in its linearized
//!   closed form ([`closed_form_energy`]) and by direct quadrature
//!   ([`hard_wall_quantize_integral`]);
//! * the turning-point rule `int_{x1}^{x2} p dx = (n + 1/2) pi` with
//!   energy-dependent turning points ([`quantize`]).
//!
//! Momentum integrals use `x = x2 sin(theta)`, which turns the
//! inverse-square-root endpoint behaviour into a smooth integrand.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::eigen::{EigenSolution, Method};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::{Potential, PotentialModel, QuadraticWell};
use crate::quadrature::GaussLegendre;
use crate::roots;

pub const DEFAULT_TOL: f64 = 1e-8;
/// Distance kept from each turning point when sampling wavefunctions.
pub const TURNING_POINT_GAP: f64 = 1e-3;
/// Energy increment of the scan-then-refine compatibility mode.
pub const SCAN_STEP: f64 = 1e-4;

const GL_ORDER: usize = 16;
const GL_PANELS: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WkbLevel {
    pub level: usize,
    pub energy: f64,
    pub turning_points: (f64, f64),
    pub action: f64,
}

/// `p(x) = sqrt(2 (eps - v(x)))` on the classical region, zero outside.
pub struct MomentumProfile<'a, P: ?Sized> {
    potential: &'a P,
    energy: f64,
}

impl<'a, P: Potential + ?Sized> MomentumProfile<'a, P> {
    pub fn new(potential: &'a P, energy: f64) -> Self {
        Self { potential, energy }
    }

    pub fn at(&self, x: f64) -> f64 {
        match self.potential.value(x) {
            Ok(v) if v < self.energy => (2.0 * (self.energy - v)).sqrt(),
            _ => 0.0,
        }
    }
}

/// Linearized hard-wall levels of the quadratic well (unit strength):
/// `(1/8)[4 pi^2/135 + n^2/2 + sqrt(4 pi^2 n^2/135 + n^4/4)] + 1/3`.
pub fn closed_form_energy(n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Unsupported {
            method: "hard-wall WKB",
            level: 0,
        });
    }
    let n = n as f64;
    let a = 4.0 * PI * PI / 135.0;
    Ok((a + n * n / 2.0 + (a * n * n + n.powi(4) / 4.0).sqrt()) / 8.0 + 1.0 / 3.0)
}

/// Box of width `2 pi` shifted by `1/3`: `n^2/8 + 1/3`.
pub fn particle_in_box_energy(n: usize) -> f64 {
    (n * n) as f64 / 8.0 + 1.0 / 3.0
}

/// Symmetric turning points `(-x2, x2)` where `v(x2) = energy`.
pub fn turning_points<P: Potential + ?Sized>(potential: &P, energy: f64) -> Result<(f64, f64)> {
    let minimum = potential.minimum();
    if energy.is_nan() || energy <= minimum {
        return Err(Error::BelowMinimum { energy, minimum });
    }
    let reach = potential.reach();
    let mut hi = if reach.is_finite() {
        reach * (1.0 - 1e-14)
    } else {
        1.0
    };
    while potential.value(hi)? <= energy {
        if reach.is_finite() || hi > 1e150 {
            return Err(Error::NoTurningPoint { energy });
        }
        hi *= 2.0;
    }
    let x2 = roots::newton_bisect(
        |x| Ok((potential.value(x)? - energy, potential.slope(x)?)),
        0.0,
        hi,
        1e-15,
        1e-15 * energy.abs().max(1.0),
    )?;
    Ok((-x2, x2))
}

/// `(S, dS/dE)` for `S = int_{-L}^{L} p dx` with `L = min(x2, limit)`.
fn momentum_integral<P: Potential + ?Sized>(
    potential: &P,
    energy: f64,
    x2: f64,
    limit: f64,
) -> (f64, f64) {
    let theta_max = if limit >= x2 {
        FRAC_PI_2
    } else {
        (limit / x2).asin()
    };
    let gl = GaussLegendre::new(GL_ORDER);
    let mut action = 0.0;
    let mut period = 0.0;
    let width = theta_max / GL_PANELS as f64;
    for panel in 0..GL_PANELS {
        let mid = (panel as f64 + 0.5) * width;
        for (t, w) in gl.nodes().iter().zip(gl.weights()) {
            let theta = mid + 0.5 * width * t;
            let (s, c) = theta.sin_cos();
            let x = x2 * s;
            let jac = x2 * c;
            let kinetic = energy - potential.value(x).unwrap_or(f64::INFINITY);
            if kinetic > 0.0 {
                let p = (2.0 * kinetic).sqrt();
                action += w * p * jac;
                period += w * jac / p;
            }
        }
    }
    // even integrand: double the half-range, then the GL half-width factor
    (action * width, period * width)
}

/// `int_{x1}^{x2} sqrt(2 (eps - v)) dx`.
pub fn action_integral<P: Potential + ?Sized>(potential: &P, energy: f64) -> Result<f64> {
    let (_, x2) = turning_points(potential, energy)?;
    Ok(momentum_integral(potential, energy, x2, f64::INFINITY).0)
}

/// Energy of level `n` from `action = (n + 1/2) pi`, refined by a
/// safeguarded Newton iteration until the action residual is below `tol`.
pub fn quantize<P: Potential + ?Sized>(potential: &P, n: usize, tol: f64) -> Result<WkbLevel> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let target = (n as f64 + 0.5) * PI;
    let minimum = potential.minimum();
    let residual = |e: f64| -> Result<(f64, f64)> {
        let (_, x2) = turning_points(potential, e)?;
        let (s, ds) = momentum_integral(potential, e, x2, f64::INFINITY);
        Ok((s - target, ds))
    };
    let lo = minimum + 1e-12 * minimum.abs().max(1.0);
    let mut excess = 1.0;
    while residual(minimum + excess)?.0 <= 0.0 {
        excess *= 2.0;
        if excess > 1e12 {
            return Err(Error::NoSignChange {
                lo,
                hi: minimum + excess,
            });
        }
    }
    let energy = roots::newton_bisect(residual, lo, minimum + excess, 1e-15, tol)?;
    level_at(potential, n, energy)
}

/// Compatibility mode: march the energy upward in fixed increments until
/// the quantization residual changes sign, then refine inside that step.
pub fn quantize_scan<P: Potential + ?Sized>(
    potential: &P,
    n: usize,
    step: f64,
    tol: f64,
) -> Result<WkbLevel> {
    let target = (n as f64 + 0.5) * PI;
    let minimum = potential.minimum();
    let residual = |e: f64| -> Result<(f64, f64)> {
        let (_, x2) = turning_points(potential, e)?;
        let (s, ds) = momentum_integral(potential, e, x2, f64::INFINITY);
        Ok((s - target, ds))
    };
    let mut e = minimum + step;
    let mut prev = residual(e)?.0;
    loop {
        let next = e + step;
        let r = residual(next)?.0;
        if prev <= 0.0 && r > 0.0 {
            let energy = roots::newton_bisect(residual, e, next, 1e-15, tol)?;
            return level_at(potential, n, energy);
        }
        prev = r;
        e = next;
        if e > minimum + 1e6 {
            return Err(Error::NoSignChange { lo: minimum, hi: e });
        }
    }
}

fn level_at<P: Potential + ?Sized>(potential: &P, n: usize, energy: f64) -> Result<WkbLevel> {
    let turning = turning_points(potential, energy)?;
    let action = momentum_integral(potential, energy, turning.1, f64::INFINITY).0;
    Ok(WkbLevel {
        level: n,
        energy,
        turning_points: turning,
        action,
    })
}

/// Hard-wall rule `int_{-pi}^{pi} p dx = n pi` with the quadratic
/// truncation, solved by quadrature instead of the linearized square root.
///
/// Where the energy lies below the truncated potential at the walls the
/// momentum is imaginary; only the classically allowed part of the box
/// contributes.
pub fn hard_wall_quantize_integral(model: &PotentialModel, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::Unsupported {
            method: "hard-wall WKB",
            level: 0,
        });
    }
    let well = QuadraticWell::new(model.v0());
    let target = n as f64 * PI;
    let residual = |e: f64| -> Result<(f64, f64)> {
        let (_, x2) = turning_points(&well, e)?;
        let (s, ds) = momentum_integral(&well, e, x2, PI);
        Ok((s - target, ds))
    };
    let minimum = well.minimum();
    let lo = minimum * (1.0 + 1e-12);
    let mut excess = 1.0;
    while residual(minimum + excess)?.0 <= 0.0 {
        excess *= 2.0;
    }
    roots::newton_bisect(residual, lo, minimum + excess, 1e-15, 1e-12)
}

/// Classical-region WKB wavefunction on the grid, `cos(sigma)/sqrt(p)` for
/// even levels and `sin(sigma)/sqrt(p)` for odd ones with
/// `sigma(x) = int_0^x p`. Samples within [`TURNING_POINT_GAP`] of a turning
/// point, and beyond, are zero.
pub fn wkb_wavefunction<P: Potential + ?Sized>(
    potential: &P,
    level: &WkbLevel,
    grid: &Grid,
) -> Result<EigenSolution> {
    let x2 = level.turning_points.1;
    let edge = x2 - TURNING_POINT_GAP;
    let profile = MomentumProfile::new(potential, level.energy);
    let gl = GaussLegendre::new(GL_ORDER);
    let samples: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&x| {
            if x.abs() > edge {
                return 0.0;
            }
            let theta = (x / x2).asin();
            let sigma = gl.integrate(0.0, theta, GL_PANELS, |t| {
                let (s, c) = t.sin_cos();
                profile.at(x2 * s) * x2 * c
            });
            let p = profile.at(x);
            let phase = if level.level.is_multiple_of(2) {
                sigma.cos()
            } else {
                sigma.sin()
            };
            phase / p.sqrt()
        })
        .collect();
    EigenSolution::from_samples(level.level, level.energy, &samples, grid, Method::Wkb)
}
