//! Closed-form ground state `A sin(x)/x` with `eps = 1/2`, exact for the
//! unit-strength well.

use std::f64::consts::PI;

use crate::eigen::{EigenSolution, Method};
use crate::error::{Error, Result};
use crate::grid::Grid;
use crate::potential::PotentialModel;
use crate::quadrature::GaussLegendre;

const SERIES_RADIUS: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticGroundState {
    pub amplitude: f64,
    pub energy: f64,
}

impl Default for AnalyticGroundState {
    fn default() -> Self {
        Self::new()
    }
}

impl AnalyticGroundState {
    /// `A = (int_{-pi}^{pi} sin^2 x / x^2 dx)^{-1/2}`.
    pub fn new() -> Self {
        let gl = GaussLegendre::new(32);
        let half = gl.integrate(0.0, PI, 8, |x| sinc(x).powi(2));
        Self {
            amplitude: (2.0 * half).sqrt().recip(),
            energy: 0.5,
        }
    }

    pub fn value(&self, x: f64) -> Result<f64> {
        if x.is_nan() || x.abs() > PI {
            return Err(Error::Domain { x });
        }
        if x.abs() == PI {
            return Ok(0.0);
        }
        Ok(self.amplitude * sinc(x))
    }

    pub fn second_derivative(&self, x: f64) -> f64 {
        self.amplitude * sinc_second_derivative(x)
    }

    /// `phi'' - 2 v(x) phi + 2 eps phi` for the unit well.
    pub fn ode_residual(&self, model: &PotentialModel, x: f64) -> Result<f64> {
        let v = model.eval(x)?;
        let phi = self.value(x)?;
        Ok(self.second_derivative(x) - 2.0 * v * phi + 2.0 * self.energy * phi)
    }

    pub fn eigen_solution(&self, grid: &Grid) -> Result<EigenSolution> {
        let samples = grid
            .nodes()
            .iter()
            .map(|&x| self.value(x))
            .collect::<Result<Vec<_>>>()?;
        EigenSolution::from_samples(0, self.energy, &samples, grid, Method::Analytic)
    }
}

/// Ground-state amplitude at `x` with unit L2 norm on the well.
pub fn ground_state(x: f64) -> Result<f64> {
    AnalyticGroundState::new().value(x)
}

/// ODE residual of the analytic ground state in the unit well.
pub fn ode_residual(x: f64) -> Result<f64> {
    AnalyticGroundState::new().ode_residual(&PotentialModel::default(), x)
}

/// `sin(x)/x` with its Taylor series near the origin.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < SERIES_RADIUS {
        let y = x * x;
        1.0 - y / 6.0 * (1.0 - y / 20.0 * (1.0 - y / 42.0 * (1.0 - y / 72.0)))
    } else {
        x.sin() / x
    }
}

/// `d^2/dx^2 [sin(x)/x] = -sin x/x - 2 cos x/x^2 + 2 sin x/x^3`.
pub fn sinc_second_derivative(x: f64) -> f64 {
    if x.abs() < SERIES_RADIUS {
        // sum_{k>=1} (-1)^k 2k (2k-1) x^{2k-2} / (2k+1)!
        let y = x * x;
        let mut term_fact = 6.0; // (2k+1)! for k = 1
        let mut pow = 1.0;
        let mut acc = 0.0;
        for k in 1..=8 {
            let kf = k as f64;
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            acc += sign * 2.0 * kf * (2.0 * kf - 1.0) * pow / term_fact;
            pow *= y;
            term_fact *= (2.0 * kf + 2.0) * (2.0 * kf + 3.0);
        }
        acc
    } else {
        let (s, c) = x.sin_cos();
        -s / x - 2.0 * c / (x * x) + 2.0 * s / (x * x * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn origin_and_walls() {
        let g = AnalyticGroundState::new();
        assert_eq!(g.value(0.0).unwrap(), g.amplitude);
        assert_eq!(g.value(PI).unwrap(), 0.0);
        assert_eq!(g.value(-PI).unwrap(), 0.0);
        assert!(g.value(3.5).is_err());
    }

    #[test]
    fn second_derivative_branches_agree() {
        for &x in &[0.0999999, 0.1000001] {
            let a = sinc_second_derivative(x);
            let (s, c) = f64::sin_cos(x);
            let closed = -s / x - 2.0 * c / (x * x) + 2.0 * s / (x * x * x);
            assert!((a - closed).abs() < 1e-9, "{a} {closed}");
        }
        assert_eq!(sinc_second_derivative(0.0), -1.0 / 3.0);
    }

    #[test]
    fn residual_small_at_sample_points() {
        assert!(ode_residual(1.0).unwrap().abs() < 1e-12);
        assert!(ode_residual(PI / 2.0).unwrap().abs() < 1e-12);
        assert!(ode_residual(0.01).unwrap().abs() < 1e-8);
    }

    #[test]
    fn even_and_positive() {
        let g = AnalyticGroundState::new();
        for i in 1..100 {
            let x = PI * i as f64 / 100.0 - 1e-9;
            let a = g.value(x).unwrap();
            assert!(a > 0.0);
            assert_eq!(a, g.value(-x).unwrap());
        }
    }
}
