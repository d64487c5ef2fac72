//! Rayleigh-Schrodinger perturbation theory around the oscillator
//! `H0 = -d^2/(2 dxi^2) + omega^2 xi^2 / 2`, `omega = sqrt(2/45)`, with
//! `W = 1/3 + 2 xi^4/945 + xi^6/4725`.
//!
//! With `xi = (a + a^dag) / sqrt(2 omega)`, the `xi^4` operator only links
//! `|n>` to `|n>, |n +- 2>, |n +- 4>`. The second-order energy and the
//! first-order state keep only the `xi^4` part of `W`; `xi^6` enters the
//! first-order energy alone unless [`SptOptions::sextic_mixing`] is set.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::eigen::{EigenSolution, Method};
use crate::error::Result;
use crate::grid::Grid;

/// `omega^2 = 2/45`.
pub const OMEGA_SQ: f64 = 2.0 / 45.0;

pub fn omega() -> f64 {
    OMEGA_SQ.sqrt()
}

/// `xi = scale * u` with `u = omega^{1/2} xi`.
pub fn u_scale() -> f64 {
    OMEGA_SQ.powf(0.25)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SptOptions {
    /// Include `xi^6` off-diagonal couplings in second order and in the
    /// state correction.
    pub sextic_mixing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SptLevel {
    pub level: usize,
    pub e0: f64,
    pub e1: f64,
    pub e2: f64,
    pub total: f64,
    /// Mixing coefficients `c_k` of the first-order state.
    pub coefficients: BTreeMap<usize, f64>,
}

/// `(1 / 2 omega)^2 * 2/945 = 1/84`.
const XI4_PREFACTOR: f64 = 1.0 / 84.0;

/// `sqrt(prod_{j=lo+1}^{hi} j)`, the ladder factor between `|lo>` and `|hi>`.
fn ladder(lo: usize, hi: usize) -> f64 {
    ((lo + 1)..=hi).map(|j| j as f64).product::<f64>().sqrt()
}

/// `<row| 2 xi^4 / 945 |col>`.
pub fn xi4_matrix_element(row: usize, col: usize) -> f64 {
    let (lo, hi) = if row <= col { (row, col) } else { (col, row) };
    let n = lo as f64;
    let raw = match hi - lo {
        0 => 6.0 * n * n + 6.0 * n + 3.0,
        // <lo+2| (4N+6)... |lo> equals <lo| (4N-2) a^dag^2 ... |lo+2>
        2 => (4.0 * n + 6.0) * ladder(lo, hi),
        4 => ladder(lo, hi),
        _ => 0.0,
    };
    XI4_PREFACTOR * raw
}

/// `(1/2 omega)^3 / 4725`.
fn xi6_prefactor() -> f64 {
    (0.5 / omega()).powi(3) / 4725.0
}

/// Diagonal `<n| xi^6 / 4725 |n>`.
pub fn xi6_diagonal(n: usize) -> f64 {
    let n = n as f64;
    xi6_prefactor() * (20.0 * n.powi(3) + 30.0 * n * n + 40.0 * n + 15.0)
}

/// `<row| xi^6 / 4725 |col>` including off-diagonal couplings.
pub fn xi6_matrix_element(row: usize, col: usize) -> f64 {
    let (lo, hi) = if row <= col { (row, col) } else { (col, row) };
    let n = lo as f64;
    let raw = match hi - lo {
        0 => return xi6_diagonal(lo),
        2 => (15.0 * n * n + 45.0 * n + 45.0) * ladder(lo, hi),
        4 => (6.0 * n + 15.0) * ladder(lo, hi),
        6 => ladder(lo, hi),
        _ => 0.0,
    };
    xi6_prefactor() * raw
}

pub fn unperturbed_energy(n: usize) -> f64 {
    (n as f64 + 0.5) * omega()
}

/// `1/3 + (6n^2+6n+3)/84 + sqrt(45/2) (20n^3+30n^2+40n+15)/1680`.
pub fn first_order(n: usize) -> f64 {
    1.0 / 3.0 + xi4_matrix_element(n, n) + xi6_diagonal(n)
}

fn coupling(k: usize, n: usize, options: SptOptions) -> f64 {
    let mut w = xi4_matrix_element(k, n);
    if options.sextic_mixing {
        w += xi6_matrix_element(k, n);
    }
    w
}

fn partners(n: usize, options: SptOptions) -> Vec<usize> {
    let reach: &[i64] = if options.sextic_mixing {
        &[-6, -4, -2, 2, 4, 6]
    } else {
        &[-4, -2, 2, 4]
    };
    reach
        .iter()
        .filter_map(|d| {
            let k = n as i64 + d;
            (k >= 0).then_some(k as usize)
        })
        .collect()
}

/// `sum_k |<k|W|n>|^2 / (e0_n - e0_k)`.
pub fn second_order_with(n: usize, options: SptOptions) -> f64 {
    let en = unperturbed_energy(n);
    partners(n, options)
        .into_iter()
        .map(|k| {
            let w = coupling(k, n, options);
            w * w / (en - unperturbed_energy(k))
        })
        .sum()
}

pub fn second_order(n: usize) -> f64 {
    second_order_with(n, SptOptions::default())
}

pub fn mixing_coefficients(n: usize, options: SptOptions) -> BTreeMap<usize, f64> {
    let en = unperturbed_energy(n);
    partners(n, options)
        .into_iter()
        .map(|k| (k, coupling(k, n, options) / (en - unperturbed_energy(k))))
        .collect()
}

pub fn total_energy_with(n: usize, options: SptOptions) -> SptLevel {
    let e0 = unperturbed_energy(n);
    let e1 = first_order(n);
    let e2 = second_order_with(n, options);
    SptLevel {
        level: n,
        e0,
        e1,
        e2,
        total: e0 + e1 + e2,
        coefficients: mixing_coefficients(n, options),
    }
}

pub fn total_energy(n: usize) -> SptLevel {
    total_energy_with(n, SptOptions::default())
}

/// Physicists' Hermite polynomial by `H_{n+1} = 2u H_n - 2n H_{n-1}`.
pub fn hermite(n: usize, u: f64) -> f64 {
    let mut prev = 1.0;
    if n == 0 {
        return prev;
    }
    let mut cur = 2.0 * u;
    for k in 1..n {
        let next = 2.0 * u * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Oscillator eigenfunctions `psi_0 ..= psi_n` at `xi`, normalized in `xi`.
///
/// Uses the recurrence for the weighted functions directly,
/// `psi_{k+1} = sqrt(2/(k+1)) u psi_k - sqrt(k/(k+1)) psi_{k-1}`, so neither
/// `H_n(u)` nor `2^n n!` is formed.
pub fn unperturbed_states(n: usize, xi: f64) -> Vec<f64> {
    let u = u_scale() * xi;
    let mut out = Vec::with_capacity(n + 1);
    let base = (omega() / PI).powf(0.25) * (-0.5 * u * u).exp();
    out.push(base);
    if n == 0 {
        return out;
    }
    out.push(2f64.sqrt() * u * base);
    for k in 1..n {
        let kf = k as f64;
        let next = (2.0 / (kf + 1.0)).sqrt() * u * out[k] - (kf / (kf + 1.0)).sqrt() * out[k - 1];
        out.push(next);
    }
    out
}

pub fn unperturbed_state(n: usize, xi: f64) -> f64 {
    unperturbed_states(n, xi)[n]
}

/// First-order corrected state `psi_n + sum_k c_k psi_k` sampled on the
/// grid and normalized there.
pub fn perturbed_state_with(n: usize, grid: &Grid, options: SptOptions) -> Result<EigenSolution> {
    let coeffs = mixing_coefficients(n, options);
    let top = coeffs.keys().copied().max().unwrap_or(n).max(n);
    let samples: Vec<f64> = grid
        .nodes()
        .iter()
        .map(|&x| {
            let basis = unperturbed_states(top, x);
            basis[n] + coeffs.iter().map(|(&k, &c)| c * basis[k]).sum::<f64>()
        })
        .collect();
    let level = total_energy_with(n, options);
    EigenSolution::from_samples(n, level.total, &samples, grid, Method::Spt)
}

pub fn perturbed_state(n: usize, grid: &Grid) -> Result<EigenSolution> {
    perturbed_state_with(n, grid, SptOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prefactor_is_one_over_84() {
        let p = (0.5 / omega()).powi(2) * 2.0 / 945.0;
        assert!((p - XI4_PREFACTOR).abs() < 1e-16);
    }

    #[test]
    fn selection_rules() {
        assert_eq!(xi4_matrix_element(5, 0), 0.0);
        assert_eq!(xi4_matrix_element(3, 0), 0.0);
        assert_eq!(xi4_matrix_element(10, 2), 0.0);
        assert!(xi4_matrix_element(6, 2) > 0.0);
    }

    #[test]
    fn ground_state_matrix_elements() {
        assert!((xi4_matrix_element(2, 0) - 2f64.sqrt() / 14.0).abs() < 1e-15);
        assert!((xi4_matrix_element(9, 7) - 17.0 * 2f64.sqrt() / 7.0).abs() < 1e-13);
    }

    #[test]
    fn first_order_constant_term() {
        for n in 0..10 {
            let rest = xi4_matrix_element(n, n) + xi6_diagonal(n);
            assert!((first_order(n) - rest - 1.0 / 3.0).abs() < 1e-14);
        }
    }

    #[test]
    fn first_order_closed_form() {
        for n in 0..8usize {
            let nf = n as f64;
            let expected = 1.0 / 3.0
                + (6.0 * nf * nf + 6.0 * nf + 3.0) / 84.0
                + (45.0f64 / 2.0).sqrt() * (20.0 * nf.powi(3) + 30.0 * nf * nf + 40.0 * nf + 15.0)
                    / 1680.0;
            assert!((first_order(n) - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn xi6_ground_value() {
        assert!((xi6_diagonal(0) - 0.042_352).abs() < 1e-6);
        // polynomial value 105 at n = 1
        assert!((xi6_diagonal(1) / xi6_diagonal(0) - 7.0).abs() < 1e-14);
    }

    #[test]
    fn e0_ground() {
        assert!((total_energy(0).e0 - 0.105_409).abs() < 1e-6);
    }

    #[test]
    fn hermite_low_orders() {
        for &u in &[-1.3, 0.0, 0.4, 2.1] {
            assert!((hermite(2, u) - (4.0 * u * u - 2.0)).abs() < 1e-12);
            let h5 = 32.0 * u.powi(5) - 160.0 * u.powi(3) + 120.0 * u;
            assert!((hermite(5, u) - h5).abs() < 1e-9);
        }
        assert_eq!(hermite(3, 1.0), -4.0);
    }

    #[test]
    fn weighted_recurrence_matches_hermite_form() {
        for n in 0..8usize {
            for &xi in &[-3.0, -0.5, 0.0, 1.2, 2.9] {
                let u = u_scale() * xi;
                let fact: f64 = (1..=n).map(|k| k as f64).product();
                let direct = (omega() / PI).powf(0.25) / (2f64.powi(n as i32) * fact).sqrt()
                    * hermite(n, u)
                    * (-0.5 * u * u).exp();
                assert!((unperturbed_state(n, xi) - direct).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn ground_state_peak() {
        let expected = (omega() / PI).powf(0.25);
        assert!((unperturbed_state(0, 0.0) - expected).abs() < 1e-15);
    }

    #[test]
    fn sextic_mixing_extends_partners() {
        let opts = SptOptions {
            sextic_mixing: true,
        };
        let c = mixing_coefficients(0, opts);
        assert_eq!(c.keys().copied().collect::<Vec<_>>(), vec![2, 4, 6]);
        assert!(second_order_with(0, opts) < second_order(0));
    }
}
