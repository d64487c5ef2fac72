//! A bound state sampled on a [`Grid`], whatever method produced it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid;

/// Samples smaller than this fraction of the peak count as zeros when
/// counting nodes.
pub const NODE_ZERO_FRACTION: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_level(level: usize) -> Self {
        if level.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Numerov,
    Wkb,
    Spt,
    Analytic,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Numerov => "numerov",
            Method::Wkb => "wkb",
            Method::Spt => "spt",
            Method::Analytic => "analytic",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "numerov" => Ok(Method::Numerov),
            "wkb" => Ok(Method::Wkb),
            "spt" => Ok(Method::Spt),
            "analytic" => Ok(Method::Analytic),
            other => Err(Error::InvalidParameter(format!("unknown method `{other}`"))),
        }
    }
}

/// One bound state with its normalized wavefunction.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSolution {
    pub level: usize,
    pub energy: f64,
    pub wavefunction: Vec<f64>,
    pub node_count: usize,
    pub parity: Parity,
    pub method: Method,
}

impl EigenSolution {
    /// Normalize `samples`, then measure nodes and parity from them.
    pub fn from_samples(
        level: usize,
        energy: f64,
        samples: &[f64],
        grid: &Grid,
        method: Method,
    ) -> Result<Self> {
        let wavefunction = normalize(samples, grid)?;
        let node_count = count_nodes(&wavefunction);
        let parity = measure_parity(&wavefunction);
        Ok(Self {
            level,
            energy,
            wavefunction,
            node_count,
            parity,
            method,
        })
    }

    pub fn density(&self) -> Vec<f64> {
        self.wavefunction.iter().map(|p| p * p).collect()
    }
}

/// Scale samples to unit Simpson L2 norm, first nonzero sample positive.
pub fn normalize(samples: &[f64], grid: &Grid) -> Result<Vec<f64>> {
    let norm_sq = grid.norm_sq(samples);
    if !norm_sq.is_finite() || norm_sq <= 0.0 {
        return Err(Error::ZeroFunction);
    }
    let mut scale = norm_sq.sqrt().recip();
    if let Some(first) = samples.iter().find(|v| **v != 0.0) {
        if *first < 0.0 {
            scale = -scale;
        }
    }
    Ok(samples.iter().map(|v| v * scale).collect())
}

/// Sign changes between consecutive interior samples, skipping near-zeros.
pub fn count_nodes(samples: &[f64]) -> usize {
    if samples.len() < 3 {
        return 0;
    }
    let peak = samples.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    let floor = peak * NODE_ZERO_FRACTION;
    let mut last = 0.0_f64;
    let mut nodes = 0;
    for &v in &samples[1..samples.len() - 1] {
        if v.abs() <= floor {
            continue;
        }
        if last != 0.0 && v.signum() != last.signum() {
            nodes += 1;
        }
        last = v;
    }
    nodes
}

/// Even if `psi(-x)` is closer to `psi(x)` than to `-psi(x)`.
pub fn measure_parity(samples: &[f64]) -> Parity {
    let (even, odd) = parity_residuals(samples);
    if even <= odd {
        Parity::Even
    } else {
        Parity::Odd
    }
}

/// `(max |psi_k - psi_{N-k}|, max |psi_k + psi_{N-k}|)` over the grid.
pub fn parity_residuals(samples: &[f64]) -> (f64, f64) {
    let n = samples.len();
    let mut even: f64 = 0.0;
    let mut odd: f64 = 0.0;
    for k in 0..n {
        let a = samples[k];
        let b = samples[n - 1 - k];
        even = even.max((a - b).abs());
        odd = odd.max((a + b).abs());
    }
    (even, odd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn constant_normalizes_to_inverse_root_two_pi() {
        let g = Grid::new(100).unwrap();
        let out = normalize(&vec![1.0; 101], &g).unwrap();
        for v in out {
            assert!((v - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn normalization_is_scale_invariant() {
        let g = Grid::new(200).unwrap();
        let f: Vec<f64> = g.nodes().iter().map(|x| (x / 2.0).cos()).collect();
        let f2: Vec<f64> = f.iter().map(|v| -2.0 * v).collect();
        let a = normalize(&f, &g).unwrap();
        let b = normalize(&f2, &g).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-15);
        }
        assert!(a[1] > 0.0);
    }

    #[test]
    fn zero_function_is_rejected() {
        let g = Grid::new(100).unwrap();
        assert_eq!(normalize(&vec![0.0; 101], &g), Err(Error::ZeroFunction));
    }

    #[test]
    fn nodes_skip_exact_zeros() {
        assert_eq!(count_nodes(&[0.0, 1.0, 0.0, -1.0, 0.0]), 1);
        assert_eq!(count_nodes(&[0.0, 1.0, -1.0, 1.0, 0.0]), 2);
        assert_eq!(count_nodes(&[0.0, 1.0, 2.0, 1.0, 0.0]), 0);
    }

    #[test]
    fn parity_of_sine_and_cosine() {
        let g = Grid::new(100).unwrap();
        let s: Vec<f64> = g.nodes().iter().map(|x| x.sin()).collect();
        let c: Vec<f64> = g.nodes().iter().map(|x| (x / 2.0).cos()).collect();
        assert_eq!(measure_parity(&s), Parity::Odd);
        assert_eq!(measure_parity(&c), Parity::Even);
    }
}
