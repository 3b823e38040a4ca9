//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use nalgebra::Vector3;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{airy_zero_magnitudes, gaussian_variational, qn, rel};
use pspectrum::commands::{cmd_fig, cmd_table1, Figure, FigureOptions, FIG5_BGRID, FIG6_BGRID};
use pspectrum::envelope::{
    coulomb_linear_energy, coulomb_linear_min, lambda_from_energy, BoundMode, BoundSpec,
    GAUSSIAN_MU, GAUSSIAN_NU,
};
use pspectrum::nbody::{
    build_jacobi_frame, linear_ground_p, nbody_energy_bounds, pair_sum_identity_check,
    quark_model_sweep, reduce_to_one_body, NBodyModel, PairPotential, QuarkModel,
};
use pspectrum::{
    build_cubic, solve_radial, solve_radial_with_kinetic, table1, AnchorSet,
    EigenSolveConfig, PNumber, QuantumNumbers, RadialPotential, Shape,
};

/// Reference values: `n, ℓ, P(0), P(1), E^A(½), E(½), percent error`.
const TABLE1: [(u32, u32, f64, f64, f64, f64, f64); 25] = [
    (1, 0, 1.21867, 1.37608, 1.83375, 1.83339, 0.019),
    (2, 0, 2.72065, 3.18131, 2.55142, 2.55065, 0.030),
    (3, 0, 4.23356, 4.99255, 3.05224, 3.05118, 0.035),
    (4, 0, 5.74962, 6.80514, 3.45341, 3.45213, 0.037),
    (5, 0, 7.26708, 8.61823, 3.79482, 3.79336, 0.039),
    (1, 1, 2.21348, 2.37192, 2.30073, 2.30050, 0.010),
    (2, 1, 3.68538, 4.15501, 2.85486, 2.85434, 0.018),
    (3, 1, 5.17774, 5.95300, 3.28659, 3.28583, 0.035),
    (4, 1, 6.67936, 7.75701, 3.64835, 3.64739, 0.026),
    (5, 1, 8.18607, 9.56408, 3.96382, 3.96268, 0.029),
    (1, 2, 3.21149, 3.37018, 2.65775, 2.65756, 0.007),
    (2, 2, 4.66860, 5.14135, 3.12077, 3.12033, 0.014),
    (3, 2, 6.14672, 6.92911, 3.50309, 3.50245, 0.018),
    (4, 2, 7.63639, 8.72515, 3.83336, 3.83254, 0.021),
    (5, 2, 9.13319, 10.52596, 4.12678, 4.12581, 0.024),
    (1, 3, 4.21044, 4.36923, 2.95461, 2.95445, 0.005),
    (2, 3, 5.65879, 6.13298, 3.35798, 3.35759, 0.012),
    (3, 3, 7.12686, 7.91304, 3.70327, 3.70270, 0.015),
    (4, 3, 8.60714, 9.70236, 4.00810, 4.00737, 0.018),
    (5, 3, 10.09555, 11.49748, 4.28283, 4.28196, 0.020),
    (1, 4, 5.20980, 5.36863, 3.21247, 3.21233, 0.004),
    (2, 4, 6.65235, 7.12732, 3.57310, 3.57275, 0.010),
    (3, 4, 8.11305, 8.90148, 3.88950, 3.88898, 0.013),
    (4, 4, 9.58587, 10.68521, 4.17335, 4.17268, 0.016),
    (5, 4, 11.06163, 12.47532, 4.43164, 4.43131, 0.008),
];

struct Outcome {
    summary: String,
    failures: Vec<String>,
}

impl Outcome {
    fn new(summary: impl Into<String>) -> Self {
        Self {
            summary: summary.into(),
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(detail());
        }
    }
}

type Check = fn() -> Outcome;

fn main() -> ExitCode {
    let checks: [(&str, &str, Check); 10] = [
        ("AC1", "hydrogen and oscillator families", ac1),
        ("AC2", "linear potential against Airy zeros", ac2),
        ("AC3", "reference table reproduction", ac3),
        ("AC4", "Legendre curvature identity", ac4),
        ("AC5", "monotone P-curves and cubic accuracy", ac5),
        ("AC6", "Coulomb-plus-linear sandwich", ac6),
        ("AC7", "lambda(E) round trip", ac7),
        ("AC8", "Gaussian weights against variational oracle", ac8),
        ("AC9", "N-body reduction and quark sweep", ac9),
        ("AC10", "determinism", ac10),
    ];
    let mut failed = 0;
    for (id, name, check) in checks {
        let start = Instant::now();
        let out = check();
        let secs = start.elapsed().as_secs_f64();
        let tag = if out.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {name}: {} ({secs:.2} s)", out.summary);
        for f in &out.failures {
            println!("       {f}");
        }
        if !out.failures.is_empty() {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn cfg() -> EigenSolveConfig {
    EigenSolveConfig::default()
}

fn within(out: &mut Outcome, start: Instant, limit: Duration) {
    let took = start.elapsed();
    out.check(took < limit, || format!("took {took:?}, limit {limit:?}"));
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let cfg = cfg();
    let mut worst: f64 = 0.0;
    let mut out = Outcome::new("");
    for state in QuantumNumbers::grid(5, 4) {
        let (n, l) = (state.n as f64, state.l as f64);
        let cases = [
            (-1.0, -(2.0 * (n + l)).powi(-2)),
            (2.0, 4.0 * n + 2.0 * l - 1.0),
        ];
        for (q, expected) in cases {
            let got = solve_radial(&Shape::Power(q).potential(), state, &cfg).map(|r| r.energy);
            match got {
                Ok(e) => {
                    let err = rel(e, expected);
                    worst = worst.max(err);
                    out.check(err <= 1e-8, || format!("q={q} {state}: {e} vs {expected}"));
                }
                Err(e) => out.failures.push(format!("q={q} {state}: {e}")),
            }
        }
    }
    within(&mut out, start, Duration::from_secs(10));
    out.summary = format!("50 states, max rel err {worst:.2e} (tol 1e-8)");
    out
}

fn ac2() -> Outcome {
    let zeros = airy_zero_magnitudes(5);
    let cfg = cfg();
    let mut out = Outcome::new("");
    let mut worst: f64 = 0.0;
    for (i, z) in zeros.iter().enumerate() {
        let state = qn(i as u32 + 1, 0);
        match solve_radial(&Shape::Power(1.0).potential(), state, &cfg) {
            Ok(r) => {
                let err = (r.energy - z).abs();
                worst = worst.max(err);
                out.check(err <= 1e-6, || format!("{state}: {} vs |a| = {z}", r.energy));
            }
            Err(e) => out.failures.push(format!("{state}: {e}")),
        }
    }
    out.summary = format!("n=1..5, max abs err {worst:.2e} (tol 1e-6)");
    out
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut out = Outcome::new("");
    let rows = match table1(&cfg()) {
        Ok(r) => r,
        Err(e) => {
            out.failures.push(e.to_string());
            return out;
        }
    };
    let mut bad_rows = 0;
    for (row, reference) in rows.iter().zip(TABLE1) {
        let (n, l, p0, p1, ea, ex, _) = reference;
        assert_eq!((row.n, row.l), (n, l), "row order");
        let checks = [
            ("P(0)", row.p_log, p0, 5e-5),
            ("P(1)", row.p_linear, p1, 5e-5),
            ("E^A", row.e_approx, ea, 2e-5),
            ("E", row.e_exact, ex, 2e-5),
        ];
        let mut row_ok = true;
        for (name, got, want, tol) in checks {
            if (got - want).abs() > tol {
                row_ok = false;
                out.failures.push(format!(
                    "({n},{l}) {name}: {got:.6} vs {want} (|diff| {:.2e} > {tol:e})",
                    (got - want).abs()
                ));
            }
        }
        if !(row.percent_error > 0.0 && row.percent_error < 0.04) {
            row_ok = false;
            out.failures.push(format!("({n},{l}) percent error {:.4}", row.percent_error));
        }
        if !row_ok {
            bad_rows += 1;
        }
    }
    within(&mut out, start, Duration::from_secs(120));
    let max_pct = rows.iter().map(|r| r.percent_error).fold(f64::MIN, f64::max);
    out.summary = format!(
        "{} of 25 rows within tolerance, max percent error {max_pct:.4}",
        25 - bad_rows
    );
    out
}

fn ac4() -> Outcome {
    let mut out = Outcome::new("");
    let mut worst: f64 = 0.0;
    let cases = [
        (-1.0, 1.0),
        (1.0, linear_ground_p()),
        (2.0, 1.5),
    ];
    for (q, p) in cases {
        let pn = PNumber::new(p, Shape::Power(q)).unwrap();
        for v in [0.5, 1.0, 2.0] {
            let f = |x: f64| pn.spectral_function(x);
            let h = 1e-3 * v;
            let d1 = (f(v + h) - f(v - h)) / (2.0 * h);
            let d2 = (f(v + h) - 2.0 * f(v) + f(v - h)) / (h * h);
            let s = f(v) - v * d1;
            let k = |x: f64| pn.kinetic_potential(x);
            let hs = 1e-3 * s;
            let k2 = (k(s + hs) - 2.0 * k(s) + k(s - hs)) / (hs * hs);
            let err = rel(d2 * k2, -1.0 / v.powi(3));
            worst = worst.max(err);
            out.check(err <= 2e-3, || format!("q={q} v={v}: F''·f''= {} vs {}", d2 * k2, -1.0 / v.powi(3)));
        }
    }
    out.summary = format!("q in {{-1,1,2}}, v in {{0.5,1,2}}, max rel err {worst:.2e} (tol 2e-3)");
    out
}

fn ac5() -> Outcome {
    let cfg = cfg();
    let qs = [-1.0, -0.5, 0.0, 0.5, 1.0, 2.0];
    let mut out = Outcome::new("");
    let solve_p = |q: f64, state: QuantumNumbers| -> pspectrum::Result<f64> {
        let shape = Shape::at(q)?;
        let e = solve_radial(&shape.potential(), state, &cfg)?.energy;
        Ok(PNumber::from_energy(shape, e)?.value())
    };
    for state in QuantumNumbers::grid(5, 4) {
        let ps: Result<Vec<f64>, _> = qs.iter().map(|&q| solve_p(q, state)).collect();
        match ps {
            Ok(ps) => out.check(ps.windows(2).all(|w| w[1] > w[0]), || {
                format!("{state}: not increasing {ps:?}")
            }),
            Err(e) => out.failures.push(format!("{state}: {e}")),
        }
    }
    let ground = qn(1, 0);
    let mut worst: f64 = 0.0;
    match AnchorSet::solve(ground, &cfg) {
        Ok(anchors) => {
            let curve = build_cubic(&anchors);
            for q in [-0.5, 0.5] {
                let direct = solve_p(q, ground).unwrap();
                let err = rel(curve.eval(q), direct);
                worst = worst.max(err);
                out.check(err < 0.006, || format!("(1,0) q={q}: cubic {} vs {direct}", curve.eval(q)));
            }
        }
        Err(e) => out.failures.push(e.to_string()),
    }
    out.summary = format!("25 states monotone on 6 powers, cubic max rel err {:.3}% (tol 0.6%)", 100.0 * worst);
    out
}

fn ac6() -> Outcome {
    let cfg = cfg();
    let mut out = Outcome::new("");
    let mut checked = 0;
    for state in [qn(1, 0), qn(1, 1), qn(2, 0)] {
        let specs: pspectrum::Result<Vec<BoundSpec>> = [
            BoundMode::CoulombEnvelopeLower,
            BoundMode::LinearEnvelopeUpper,
            BoundMode::SumApproximation,
        ]
        .iter()
        .map(|&m| BoundSpec::solve(m, state, &cfg))
        .collect();
        let [lower, upper, sum] = match specs {
            Ok(s) => [s[0], s[1], s[2]],
            Err(e) => {
                out.failures.push(format!("{state}: {e}"));
                continue;
            }
        };
        for (a, b) in [(1.0, 1.0), (1.0, 5.0), (5.0, 1.0)] {
            let direct = solve_radial(&RadialPotential::coulomb_linear(a, b).unwrap(), state, &cfg)
                .unwrap()
                .energy;
            let lo = coulomb_linear_energy(a, b, &lower).unwrap();
            let hi = coulomb_linear_energy(a, b, &upper).unwrap();
            let sa = coulomb_linear_energy(a, b, &sum).unwrap();
            out.check(lo <= direct && direct <= hi, || {
                format!("{state} a={a} b={b}: {lo} <= {direct} <= {hi} fails")
            });
            if state.n == 1 {
                out.check(sa <= direct, || format!("{state} a={a} b={b}: sum {sa} > {direct}"));
            }
            checked += 1;
        }
    }
    out.summary = format!("{checked} state/coupling pairs ordered");
    out
}

fn ac7() -> Outcome {
    let mut out = Outcome::new("");
    let mut worst: f64 = 0.0;
    for (nu, mu) in [(1.0, 1.0), (1.0, 1.376083)] {
        let floor = -1.0 / (4.0 * nu * nu);
        for i in 1..=10 {
            let e = floor + (5.0 - floor) * i as f64 / 10.0;
            let back = lambda_from_energy(e, nu, mu).and_then(|l| coulomb_linear_min(1.0, l, nu, mu));
            match back {
                Ok(b) => {
                    worst = worst.max((b - e).abs());
                    out.check((b - e).abs() <= 1e-8, || format!("nu={nu} mu={mu} E={e}: back {b}"));
                }
                Err(err) => out.failures.push(format!("E={e}: {err}")),
            }
        }
    }
    let l0 = lambda_from_energy(-0.25, 1.0, 1.0).unwrap();
    let l1 = lambda_from_energy(1.0, 1.0, 1.0).unwrap();
    out.check(l0.abs() <= 1e-12, || format!("lambda(-1/4) = {l0}"));
    out.check((l1 - 1.0).abs() <= 1e-12, || format!("lambda(1) = {l1}"));
    out.summary = format!("20 energies, max |dE| {worst:.2e}; anchors {l0:e}, {l1}");
    out
}

fn ac8() -> Outcome {
    let mut out = Outcome::new("");
    let closed = coulomb_linear_min(1.0, 1.0, GAUSSIAN_NU, GAUSSIAN_MU).unwrap();
    let oracle = gaussian_variational(1.0, 1.0);
    let err = rel(closed, oracle);
    out.check(err <= 1e-6, || format!("weights give {closed}, oracle {oracle}"));
    let direct = solve_radial(&RadialPotential::coulomb_linear(1.0, 1.0).unwrap(), qn(1, 0), &cfg())
        .unwrap()
        .energy;
    out.check(closed >= direct, || format!("Gaussian {closed} below exact {direct}"));
    out.summary = format!("{closed:.9} vs oracle {oracle:.9} (rel {err:.1e}), exact {direct:.9}");
    out
}

fn ac9() -> Outcome {
    let cfg = cfg();
    let mut out = Outcome::new("");

    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut worst_identity: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let pos: Vec<Vector3<f64>> = (0..n)
            .map(|_| Vector3::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0)))
            .collect();
        let (lhs, rhs) = pair_sum_identity_check(&build_jacobi_frame(n).unwrap(), &pos).unwrap();
        let err = rel(rhs, lhs);
        worst_identity = worst_identity.max(err);
        out.check(err <= 1e-12, || format!("N={n}: {lhs} vs {rhs}"));
    }

    let mut worst_osc: f64 = 0.0;
    for n in 2..=5 {
        let (mass, depth, range) = (1.3, 0.7, 1.1);
        let shape = RadialPotential::pure_power(2.0).unwrap();
        let model = NBodyModel::new(n, mass, PairPotential::Shape { depth, range_a: range, shape }).unwrap();
        let reduced = reduce_to_one_body(&model).unwrap();
        let e = solve_radial(&reduced.potential, qn(1, 0), &cfg).unwrap().energy;
        let err = rel(e, 3.0 * reduced.coupling.sqrt());
        worst_osc = worst_osc.max(err);
        out.check(err <= 1e-8, || format!("N={n}: {e} vs 3 v^(1/2)"));
        // Separate oscillators in Jacobi coordinates.
        let k = n as f64 * depth / (range * range);
        let physical = (n as f64 - 1.0) * 1.5 * (2.0 * k / mass).sqrt();
        let bounds = nbody_energy_bounds(&model, &cfg).unwrap();
        out.check(rel(bounds.lower, physical) <= 1e-8, || {
            format!("N={n}: physical {} vs {physical}", bounds.lower)
        });
    }

    let model = QuarkModel::default();
    let mut points = 0;
    let mut worst_two: f64 = 0.0;
    for grid in [FIG5_BGRID, FIG6_BGRID] {
        let sweep = match quark_model_sweep(&[2, 3, 4, 5], model, &grid.points(), &cfg) {
            Ok(s) => s,
            Err(e) => {
                out.failures.push(e.to_string());
                continue;
            }
        };
        for p in &sweep {
            points += 1;
            out.check(p.lower <= p.upper, || format!("N={} b={}: {} > {}", p.particles, p.b, p.lower, p.upper));
            if p.particles == 2 {
                let pot = RadialPotential::coulomb_linear(model.coulomb_a, p.b).unwrap();
                let direct = solve_radial_with_kinetic(1.0 / model.mass, &pot, qn(1, 0), &cfg).unwrap().energy;
                let exact = p.exact.unwrap_or(f64::NAN);
                let diff = (exact - direct).abs();
                worst_two = worst_two.max(diff);
                out.check(diff <= 1e-6, || format!("N=2 b={}: sweep {exact} vs direct {direct}", p.b));
                out.check(p.lower <= direct && direct <= p.upper, || {
                    format!("N=2 b={}: {direct} outside [{}, {}]", p.b, p.lower, p.upper)
                });
            }
        }
    }
    out.summary = format!(
        "identity max rel {worst_identity:.1e}; oscillator max rel {worst_osc:.1e}; \
         {points} sweep points ordered, N=2 max diff {worst_two:.1e}"
    );
    out
}

fn ac10() -> Outcome {
    let mut out = Outcome::new("");
    let tol = cfg().energy_tolerance;
    let a = cmd_table1(tol).map(|r| r.to_csv());
    let b = cmd_table1(tol).map(|r| r.to_csv());
    match (a, b) {
        (Ok(a), Ok(b)) => out.check(a == b, || "table1 output differs between runs".into()),
        (Err(e), _) | (_, Err(e)) => out.failures.push(format!("table1: {e}")),
    }
    let opts = FigureOptions::default();
    for id in [1, 2, 4, 5, 6] {
        let figure = Figure::from_id(id).unwrap();
        let a = cmd_fig(figure, &opts);
        let b = cmd_fig(figure, &opts);
        match (a, b) {
            (Ok(a), Ok(b)) => out.check(a.to_csv() == b.to_csv() && a.to_json() == b.to_json(), || {
                format!("fig {id} output differs between runs")
            }),
            (Err(e), _) | (_, Err(e)) => out.failures.push(format!("fig {id}: {e}")),
        }
    }
    out.summary = "table1 and figures 1, 2, 4, 5, 6 byte-identical across two runs".into();
    out
}
