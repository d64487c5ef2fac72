//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

mod common;

use std::f64::consts::PI;
use std::time::Instant;

use cotwell::numerov::{NumerovConfig, Shooter};
use cotwell::potential::FlatWell;
use cotwell::report::{self, SolverConfig};
use cotwell::{spt, wkb, Grid, Method, Parity, PotentialModel, Result};

use common::{unit_well, CONVERGED, TABLE_NUMEROV, TABLE_SPT, TABLE_WKB};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        pass,
        detail: detail.into(),
    })
}

/// Levels whose value misses `expected` by more than `tol`, with the
/// largest miss.
fn misses(values: &[f64], expected: &[f64], tol: f64) -> (Vec<usize>, f64) {
    let mut bad = Vec::new();
    let mut worst = 0.0_f64;
    for (n, (v, e)) in values.iter().zip(expected).enumerate() {
        let d = (v - e).abs();
        worst = worst.max(d);
        if d > tol {
            bad.push(n);
        }
    }
    (bad, worst)
}

fn criterion_1() -> Result<Outcome> {
    let start = Instant::now();
    let model = PotentialModel::default();
    let grid = Grid::new(4000)?;
    let e = Shooter::new(&model, &grid, NumerovConfig::default())?.solve_spectrum(1)?[0].energy;
    let secs = start.elapsed().as_secs_f64();
    let err = (e - 0.5).abs();
    outcome(
        err < 1e-5 && secs < 1.0,
        format!("ground level {e:.12} at N=4000, error {err:.1e}, {secs:.2} s"),
    )
}

fn criterion_2() -> Result<Outcome> {
    let start = Instant::now();
    let model = PotentialModel::default();
    let grid = Grid::new(8000)?;
    let states = Shooter::new(&model, &grid, NumerovConfig::default())?.solve_spectrum(8)?;
    let secs = start.elapsed().as_secs_f64();
    let energies: Vec<f64> = states.iter().map(|s| s.energy).collect();
    let (bad, worst) = misses(&energies, &TABLE_NUMEROV, 1e-3);
    let (_, reference) = misses(&energies, &CONVERGED, 0.0);
    outcome(
        bad.is_empty() && secs < 10.0,
        format!(
            "N=8000, worst miss {worst:.2e}, levels outside 1e-3: {bad:?}, {secs:.2} s (independent reference within {reference:.1e})"
        ),
    )
}

fn criterion_3() -> Result<Outcome> {
    let model = PotentialModel::default();
    let energies = (0..8)
        .map(|n| wkb::quantize(&model, n, 1e-8).map(|l| l.energy))
        .collect::<Result<Vec<_>>>()?;
    let (bad, worst) = misses(&energies, &TABLE_WKB, 1e-3);
    outcome(
        bad.is_empty(),
        format!("worst miss {worst:.2e}, levels outside 1e-3: {bad:?}"),
    )
}

fn criterion_4() -> Result<Outcome> {
    let totals: Vec<f64> = (0..8).map(|n| spt::total_energy(n).total).collect();
    let (bad, worst) = misses(&totals, &TABLE_SPT, 1e-4);
    outcome(
        bad.is_empty(),
        format!("worst miss {worst:.2e}, levels outside 1e-4: {bad:?}"),
    )
}

fn criterion_5() -> Result<Outcome> {
    let e0 = spt::second_order(0);
    let ground = (e0 - -0.028_234_621).abs() < 1e-9;
    let printed = [
        -0.2218, -0.8269, -2.1176, -4.3683, -7.8533, -12.8468, -19.6231,
    ];
    let values: Vec<f64> = (1..8).map(spt::second_order).collect();
    let (bad, worst) = misses(&values, &printed, 1e-4);
    outcome(
        ground && bad.is_empty(),
        format!("e2(0) = {e0:.10}, list worst miss {worst:.2e}"),
    )
}

fn criterion_6() -> Result<Outcome> {
    let s = f64::sqrt;
    let listed = [
        (2, 0, s(2.0) / 14.0),
        (4, 0, s(6.0) / 42.0),
        (3, 1, 5.0 * s(6.0) / 42.0),
        (5, 1, s(30.0) / 42.0),
        (4, 2, s(3.0) / 3.0),
        (6, 2, s(10.0) / 14.0),
        (5, 3, 3.0 * s(20.0) / 14.0),
        (7, 3, s(5.0 / 42.0)),
        (7, 5, 13.0 / s(42.0)),
        (6, 4, 11.0 * s(30.0) / 42.0),
        (8, 4, s(5.0 / 21.0)),
        (8, 6, 15.0 * s(56.0) / 42.0),
        (9, 5, 3.0 / s(21.0)),
        (9, 7, 17.0 * s(2.0) / 7.0),
        (10, 6, s(140.0) / 14.0),
        (11, 7, s(55.0) / 7.0),
    ];
    let worst = listed
        .iter()
        .map(|&(r, c, v)| (spt::xi4_matrix_element(r, c) - v).abs())
        .fold(0.0, f64::max);
    outcome(
        worst < 1e-12,
        format!("16 elements, worst miss {worst:.1e}"),
    )
}

fn criterion_7() -> Result<Outcome> {
    let e1 = wkb::closed_form_energy(1)?;
    let e8 = wkb::closed_form_energy(8)?;
    let b1 = wkb::particle_in_box_energy(1);
    let b8 = wkb::particle_in_box_energy(8);
    let pass = (e1 - 0.5244).abs() < 5e-4
        && (e8 - 8.406).abs() < 5e-4
        && (b1 - 0.4583).abs() < 5e-4
        && (b8 - 8.333).abs() < 5e-4;
    outcome(
        pass,
        format!("closed form {e1:.5}, {e8:.5}; box {b1:.5}, {b8:.5}"),
    )
}

fn criterion_8() -> Result<Outcome> {
    let config = SolverConfig::default();
    let grid = config.grid()?;
    let states = config.numerov_spectrum(8)?;
    let structure = states
        .iter()
        .enumerate()
        .all(|(n, s)| s.level == n && s.node_count == n && s.parity == Parity::of_level(n));
    let increasing = states.windows(2).all(|w| w[1].energy > w[0].energy);

    let mut exported = states.clone();
    for n in 0..8 {
        exported.push(config.solve_state(Method::Wkb, n)?);
        exported.push(config.solve_state(Method::Spt, n)?);
    }
    exported.push(config.solve_state(Method::Analytic, 0)?);
    let norm_worst = exported
        .iter()
        .map(|s| (grid.norm_sq(&s.wavefunction) - 1.0).abs())
        .fold(0.0, f64::max);

    let model = PotentialModel::default();
    let mut even = true;
    for k in 0..=20_000 {
        let x = (PI - 1e-9) * k as f64 / 20_000.0;
        even &= model.eval(x)? == model.eval(-x)?;
    }
    let mut series_worst = 0.0_f64;
    let mut series12_worst = 0.0_f64;
    for k in 1..=1000 {
        let x = k as f64 / 1000.0;
        series_worst = series_worst.max((model.eval_series(x, 8)? - unit_well(x)).abs());
        series12_worst = series12_worst.max((model.eval_series(x, 12)? - unit_well(x)).abs());
    }

    let well = FlatWell::new(1.0 / 3.0);
    let box_states = Shooter::new(&well, &grid, NumerovConfig::default())?.solve_spectrum(5)?;
    let box_worst = box_states
        .iter()
        .enumerate()
        .map(|(i, s)| (s.energy - well.exact_level(i + 1)).abs())
        .fold(0.0, f64::max);

    let checks = [
        ("nodes/parity", structure),
        ("increasing", increasing),
        ("normalized", norm_worst < 1e-6),
        ("even", even),
        ("series order 8 on |x|<=1", series_worst < 1e-10),
        ("flat box", box_worst < 1e-6),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        failed.is_empty(),
        format!(
            "norm {norm_worst:.1e}, series order 8 {series_worst:.1e} (order 12 {series12_worst:.1e}), box {box_worst:.1e}, failing: {failed:?}"
        ),
    )
}

fn criterion_9() -> Result<Outcome> {
    let rows = report::convergence_study(0, &[500, 1000, 2000, 4000], &SolverConfig::default())?;
    let orders: Vec<Option<f64>> = rows[1..].iter().map(|r| r.observed_order).collect();
    let pass = orders
        .iter()
        .all(|o| o.is_some_and(|o| (3.5..=4.5).contains(&o)));
    let errors: Vec<String> = rows.iter().map(|r| format!("{:.1e}", r.error)).collect();
    let shown: Vec<String> = orders
        .iter()
        .map(|o| o.map_or("-".to_string(), |o| format!("{o:.2}")))
        .collect();
    outcome(pass, format!("errors {errors:?}, orders {shown:?}"))
}

fn criterion_10() -> Result<Outcome> {
    let config = SolverConfig::default();
    let grid = config.grid()?;
    let a = report::figure_panel("a", 0, &[Method::Analytic, Method::Numerov], &config)?;
    let (ana, num) = (
        a.column(Method::Analytic).unwrap(),
        a.column(Method::Numerov).unwrap(),
    );
    let worst = ana
        .iter()
        .zip(num)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let b = report::figure_panel("b", 1, &[Method::Spt, Method::Numerov], &config)?;
    let dist = report::l2_distance(
        &grid,
        b.column(Method::Spt).unwrap(),
        b.column(Method::Numerov).unwrap(),
    );
    outcome(
        worst < 1e-3 && dist > 0.05,
        format!("panel a max |d| {worst:.1e}, panel b L2 {dist:.3}"),
    )
}

type Criterion = (&'static str, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 10] = [
        ("analytic ground level", criterion_1),
        ("Numerov column", criterion_2),
        ("WKB column", criterion_3),
        ("SPT column", criterion_4),
        ("second-order corrections", criterion_5),
        ("quartic matrix elements", criterion_6),
        ("closed-form WKB and box", criterion_7),
        ("property suite", criterion_8),
        ("convergence order", criterion_9),
        ("wavefunction overlays", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (pass, detail) = match check() {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {name}: {detail}",
            i + 1,
            if pass { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
