//! Uniform discretization of the well `[-pi, pi]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MIN_INTERVALS: usize = 100;

/// `N + 1` equally spaced nodes `x_k = -pi + h k`, `h = 2 pi / N`.
///
/// Nodes are generated as `(2k - N) pi / N` so that both walls, the origin
/// and every mirror pair `x_{N-k} = -x_k` are exact in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    intervals: usize,
    h: f64,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(intervals: usize) -> Result<Self> {
        if intervals < MIN_INTERVALS {
            return Err(Error::InvalidParameter(format!(
                "grid needs at least {MIN_INTERVALS} intervals, got {intervals}"
            )));
        }
        if !intervals.is_multiple_of(2) {
            return Err(Error::InvalidParameter(format!(
                "grid interval count must be even, got {intervals}"
            )));
        }
        let n = intervals as f64;
        let nodes = (0..=intervals)
            .map(|k| {
                let m = 2 * k as i64 - intervals as i64;
                m as f64 * PI / n
            })
            .collect();
        Ok(Self {
            intervals,
            h: 2.0 * PI / n,
            nodes,
        })
    }

    /// Number of intervals `N`.
    pub fn intervals(&self) -> usize {
        self.intervals
    }

    /// Number of nodes, `N + 1`.
    pub fn n_points(&self) -> usize {
        self.intervals + 1
    }

    pub fn step(&self) -> f64 {
        self.h
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn x(&self, k: usize) -> f64 {
        self.nodes[k]
    }

    /// Composite Simpson integral of grid samples over `[-pi, pi]`.
    pub fn simpson(&self, samples: &[f64]) -> f64 {
        debug_assert_eq!(samples.len(), self.n_points());
        let n = self.intervals;
        let mut odd = 0.0;
        let mut even = 0.0;
        for (k, &s) in samples.iter().enumerate().take(n).skip(1) {
            if k % 2 == 1 {
                odd += s;
            } else {
                even += s;
            }
        }
        self.h / 3.0 * (samples[0] + samples[n] + 4.0 * odd + 2.0 * even)
    }

    /// Simpson L2 norm squared, `sum_k w_k |f_k|^2 h`.
    pub fn norm_sq(&self, samples: &[f64]) -> f64 {
        let sq: Vec<f64> = samples.iter().map(|v| v * v).collect();
        self.simpson(&sq)
    }
}
