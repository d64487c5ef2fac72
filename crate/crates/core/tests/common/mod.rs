#![allow(dead_code)]

/// Table of energies printed for the unit well, levels 0..8.
pub const TABLE_WKB: [f64; 8] = [
    0.4579, 0.8408, 1.4307, 2.2465, 3.2976, 4.5890, 6.1237, 7.9035,
];
pub const TABLE_SPT: [f64; 8] = [
    0.4886, 0.9028, 1.5566, 2.5143, 3.8414, 5.6014, 7.8593, 10.6795,
];
pub const TABLE_NUMEROV: [f64; 8] = [
    0.5000, 0.9424, 1.6108, 2.5175, 3.6672, 5.0628, 6.7055, 8.5963,
];

/// Converged levels of the unit well from an independent adaptive ODE
/// shooting (Frobenius start at the wall, relative tolerance 1e-12).
pub const CONVERGED: [f64; 8] = [
    0.5,
    0.942_110_621_5,
    1.610_180_751_6,
    2.516_096_119_5,
    3.664_986_532_2,
    5.059_381_607_7,
    6.700_678_605_4,
    8.589_720_169_2,
];

/// Adaptive Simpson quadrature.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = 0.5 * (a + b);
        let fm = f(m);
        (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
    }
    #[allow(clippy::too_many_arguments)]
    fn recurse<F: Fn(f64) -> f64>(
        f: &F,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        m: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (lm, flm, left) = simpson(f, a, fa, m, fm);
        let (rm, frm, right) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        recurse(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
            + recurse(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
    }
    let (fa, fb) = (f(a), f(b));
    let (m, fm, whole) = simpson(f, a, fa, b, fb);
    recurse(f, a, fa, b, fb, m, fm, whole, tol, 50)
}

/// Plain bisection on a sign change.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid) > 0.0) == (flo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

pub fn sinc(x: f64) -> f64 {
    if x == 0.0 {
        1.0
    } else {
        x.sin() / x
    }
}

/// `(1 - x cot x) / x^2` straight from the definition.
pub fn unit_well(x: f64) -> f64 {
    (1.0 - x / x.tan()) / (x * x)
}
