//! The dimensionless cotangent well `v(x) = v0 (1 - x cot x) / x^2` on
//! `[-pi, pi]`, its Bernoulli-number power series and low-order truncations.
//!
//! The closed form loses all significant digits to cancellation near the
//! origin, so below `series_switch_radius` the even power series is used
//! instead. At the walls the well is infinite; evaluation returns
//! `wall_cap` there.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::grid::Grid;

pub const DEFAULT_SWITCH_RADIUS: f64 = 0.1;
pub const DEFAULT_SERIES_ORDER: usize = 8;
pub const DEFAULT_WALL_CAP: f64 = 1e12;

/// Leading behaviour of a potential next to a hard wall at distance `d`:
/// `v ~ pole / d + constant`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WallExpansion {
    pub pole: f64,
    pub constant: f64,
}

/// A symmetric confining potential on `[-pi, pi]` the solvers can work with.
pub trait Potential: Sync {
    fn value(&self, x: f64) -> Result<f64>;

    /// `dv/dx`, used by the Newton steps of the turning-point search.
    fn slope(&self, x: f64) -> Result<f64>;

    /// Value at the bottom of the well, `v(0)`.
    fn minimum(&self) -> f64;

    fn wall(&self) -> WallExpansion;

    /// Largest `|x|` at which a classical turning point may be sought.
    fn reach(&self) -> f64 {
        PI
    }
}

/// Even-index Bernoulli numbers `B_0, B_2, B_4, ...` as exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// `B_{2n}` as an exact rational.
    pub fn get(&self, n: usize) -> Option<&BigRational> {
        self.values.get(n)
    }

    pub fn get_f64(&self, n: usize) -> Option<f64> {
        self.values.get(n).and_then(|b| b.to_f64())
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }
}

/// `B_0 ..= B_{2 n_max}` from `sum_{k=0}^{m} C(m+1, k) B_k = 0`.
pub fn bernoulli(n_max: usize) -> BernoulliTable {
    let m_max = 2 * n_max;
    let mut all: Vec<BigRational> = Vec::with_capacity(m_max + 1);
    all.push(BigRational::one());
    for m in 1..=m_max {
        if m > 1 && m % 2 == 1 {
            all.push(BigRational::zero());
            continue;
        }
        // C(m+1, k) built incrementally from C(m+1, 0) = 1.
        let mut binom = BigInt::one();
        let mut acc = BigRational::zero();
        for (k, b) in all.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binom.clone());
            }
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        all.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
    }
    BernoulliTable {
        values: all.into_iter().step_by(2).collect(),
    }
}

/// Coefficients `a_n` of `(1 - x cot x) / x^2 = sum_{n>=1} a_n x^{2n-2}`,
/// i.e. `a_n = -4 (-1)^n 2^{2n-2} B_{2n} / (2n)!`, exactly.
pub fn series_coefficients_exact(order: usize) -> Vec<BigRational> {
    let table = bernoulli(order);
    let mut factorial = BigInt::one();
    let mut out = Vec::with_capacity(order);
    for n in 1..=order {
        factorial *= BigInt::from(2 * n - 1) * BigInt::from(2 * n);
        let pow = BigInt::one() << (2 * n - 2);
        let mut c = BigRational::new(pow * BigInt::from(4), factorial.clone()) * &table.values[n];
        if n % 2 == 0 {
            c = -c;
        }
        out.push(c);
    }
    out
}

fn series_coefficients(order: usize) -> Vec<f64> {
    series_coefficients_exact(order)
        .iter()
        .map(|c| {
            let v = c.to_f64().unwrap_or(0.0);
            debug_assert!(!c.is_negative());
            v
        })
        .collect()
}

/// Horner evaluation of `sum a_n y^{n-1}` with `y = x^2`.
fn horner(coeffs: &[f64], y: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * y + c)
}

/// Dimensionless well parameters and evaluation policy.
#[derive(Debug, Clone, PartialEq)]
pub struct PotentialModel {
    v0: f64,
    series_switch_radius: f64,
    series_order: usize,
    wall_cap: f64,
    coeffs: Vec<f64>,
}

impl Default for PotentialModel {
    fn default() -> Self {
        Self::new(1.0).expect("unit strength is valid")
    }
}

impl PotentialModel {
    pub fn new(v0: f64) -> Result<Self> {
        if !(v0 > 0.0 && v0.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "well strength must be positive, got {v0}"
            )));
        }
        Ok(Self {
            v0,
            series_switch_radius: DEFAULT_SWITCH_RADIUS,
            series_order: DEFAULT_SERIES_ORDER,
            wall_cap: DEFAULT_WALL_CAP,
            coeffs: series_coefficients(DEFAULT_SERIES_ORDER),
        })
    }

    pub fn with_series(mut self, switch_radius: f64, order: usize) -> Result<Self> {
        if !(switch_radius > 0.0 && switch_radius <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "series switch radius must lie in (0, 1], got {switch_radius}"
            )));
        }
        if order < 4 {
            return Err(Error::InvalidParameter(format!(
                "series order must be at least 4, got {order}"
            )));
        }
        self.series_switch_radius = switch_radius;
        self.series_order = order;
        self.coeffs = series_coefficients(order);
        Ok(self)
    }

    pub fn with_wall_cap(mut self, cap: f64) -> Result<Self> {
        if cap.is_nan() || cap < 1e9 {
            return Err(Error::InvalidParameter(format!(
                "wall cap must be at least 1e9, got {cap}"
            )));
        }
        self.wall_cap = cap;
        Ok(self)
    }

    pub fn v0(&self) -> f64 {
        self.v0
    }

    pub fn series_switch_radius(&self) -> f64 {
        self.series_switch_radius
    }

    pub fn series_order(&self) -> usize {
        self.series_order
    }

    pub fn wall_cap(&self) -> f64 {
        self.wall_cap
    }

    /// `v(x)`, switching to the series near the origin and returning the
    /// wall cap at `|x| = pi`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        let ax = x.abs();
        if ax > PI || x.is_nan() {
            return Err(Error::Domain { x });
        }
        if ax == PI {
            return Ok(self.wall_cap);
        }
        if ax <= self.series_switch_radius {
            return Ok(self.v0 * horner(&self.coeffs, x * x));
        }
        Ok(self.closed_form(ax))
    }

    fn closed_form(&self, x: f64) -> f64 {
        self.v0 * (1.0 - x / x.tan()) / (x * x)
    }

    /// Truncated Bernoulli series with `order` terms.
    pub fn eval_series(&self, x: f64, order: usize) -> Result<f64> {
        if x.is_nan() || x.abs() >= PI {
            return Err(Error::Domain { x });
        }
        if order == 0 {
            return Err(Error::InvalidParameter("series order must be >= 1".into()));
        }
        let y = x * x;
        if order <= self.coeffs.len() {
            Ok(self.v0 * horner(&self.coeffs[..order], y))
        } else {
            Ok(self.v0 * horner(&series_coefficients(order), y))
        }
    }

    /// The `O(x^2)` truncation `v0 (1/3 + x^2/45)`.
    pub fn eval_quadratic(&self, x: f64) -> f64 {
        self.v0 * (1.0 / 3.0 + x * x / 45.0)
    }

    /// `(x, v(x))` on every grid node, walls capped.
    pub fn export_profile(&self, grid: &Grid) -> Vec<(f64, f64)> {
        grid.nodes()
            .iter()
            .map(|&x| (x, self.eval(x).expect("grid nodes lie in the well")))
            .collect()
    }
}

impl Potential for PotentialModel {
    fn value(&self, x: f64) -> Result<f64> {
        self.eval(x)
    }

    fn slope(&self, x: f64) -> Result<f64> {
        let ax = x.abs();
        if ax.is_nan() || ax >= PI {
            return Err(Error::Domain { x });
        }
        let d = if ax <= self.series_switch_radius {
            // d/dx sum a_n x^{2n-2}
            let y = x * x;
            let mut acc = 0.0;
            for (i, c) in self.coeffs.iter().enumerate().skip(1).rev() {
                acc = acc * y + c * (2 * i) as f64;
            }
            acc * x
        } else {
            let num = 1.0 - x / x.tan();
            let dnum = -1.0 / x.tan() + x / (x.sin() * x.sin());
            dnum / (x * x) - 2.0 * num / (x * x * x)
        };
        Ok(self.v0 * d)
    }

    fn minimum(&self) -> f64 {
        self.v0 / 3.0
    }

    /// Next to either wall `v ~ v0 / (pi d) + 2 v0 / pi^2`.
    fn wall(&self) -> WallExpansion {
        WallExpansion {
            pole: self.v0 / PI,
            constant: 2.0 * self.v0 / (PI * PI),
        }
    }
}

/// Flat-bottomed box at `level` with hard walls at `+-pi`: the infinite
/// square well used as an analytic oracle for the shooting solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatWell {
    pub level: f64,
    pub wall_cap: f64,
}

impl FlatWell {
    pub fn new(level: f64) -> Self {
        Self {
            level,
            wall_cap: DEFAULT_WALL_CAP,
        }
    }

    /// `n^2 / 8 + level` for `n >= 1`, the box of width `2 pi`.
    pub fn exact_level(&self, n: usize) -> f64 {
        (n * n) as f64 / 8.0 + self.level
    }
}

impl Potential for FlatWell {
    fn value(&self, x: f64) -> Result<f64> {
        let ax = x.abs();
        if ax > PI || x.is_nan() {
            Err(Error::Domain { x })
        } else if ax == PI {
            Ok(self.wall_cap)
        } else {
            Ok(self.level)
        }
    }

    fn slope(&self, x: f64) -> Result<f64> {
        if x.abs() > PI {
            return Err(Error::Domain { x });
        }
        Ok(0.0)
    }

    fn minimum(&self) -> f64 {
        self.level
    }

    fn wall(&self) -> WallExpansion {
        WallExpansion {
            pole: 0.0,
            constant: self.level,
        }
    }
}

/// The harmonic truncation `v0 (1/3 + x^2/45)` extended to the whole line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticWell {
    pub v0: f64,
}

impl QuadraticWell {
    pub fn new(v0: f64) -> Self {
        Self { v0 }
    }

    /// Oscillator frequency `sqrt(2 v0 / 45)` of `v = v0/3 + omega^2 x^2 / 2`.
    pub fn omega(&self) -> f64 {
        (2.0 * self.v0 / 45.0).sqrt()
    }
}

impl Potential for QuadraticWell {
    fn value(&self, x: f64) -> Result<f64> {
        Ok(self.v0 * (1.0 / 3.0 + x * x / 45.0))
    }

    fn slope(&self, x: f64) -> Result<f64> {
        Ok(self.v0 * 2.0 * x / 45.0)
    }

    fn minimum(&self) -> f64 {
        self.v0 / 3.0
    }

    fn wall(&self) -> WallExpansion {
        WallExpansion {
            pole: 0.0,
            constant: self.v0 * (1.0 / 3.0 + PI * PI / 45.0),
        }
    }

    fn reach(&self) -> f64 {
        f64::INFINITY
    }
}
