//! Bound states of the symmetric cotangent well
//! `v(x) = v0 (1 - x cot x) / x^2` on `[-pi, pi]` with hard walls.
//!
//! Four routes to the spectrum are provided: the closed-form ground state
//! of the unit well ([`analytic`]), semiclassical quantization ([`wkb`]),
//! perturbation theory around the harmonic truncation ([`spt`]) and Numerov
//! shooting ([`numerov`]). [`report`] lines them up against each other.

pub mod analytic;
pub mod cli;
pub mod eigen;
pub mod error;
pub mod grid;
pub mod numerov;
pub mod potential;
pub mod quadrature;
pub mod report;
pub mod roots;
pub mod spt;
pub mod wkb;

pub use eigen::{EigenSolution, Method, Parity};
pub use error::{Error, Result};
pub use grid::Grid;
pub use potential::{Potential, PotentialModel};
