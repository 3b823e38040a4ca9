//! Cubic interpolation of `P_{nℓ}(q)` over `-1 ≤ q ≤ 2`.
//!
//! The four anchors are the exact Coulomb and oscillator values at `q = -1`
//! and `q = 2` and two solved values: the log potential (`q = 0`) and the
//! linear potential (`q = 1`). The cubic is expanded about `q = 0`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigen::{solve_radial, EigenSolveConfig, QuantumNumbers};
use crate::error::{Error, Result};
use crate::p_representation::{energy_from_p, energy_from_p_log, PNumber};
use crate::potential::Shape;

/// P-number of state `qn` for the bare shape, from a direct eigensolve.
pub fn solved_p(shape: Shape, qn: QuantumNumbers, cfg: &EigenSolveConfig) -> Result<PNumber> {
    if let Some(p) = PNumber::exact(shape, qn) {
        return Ok(p);
    }
    let energy = solve_radial(&shape.potential(), qn, cfg)
        .map_err(|e| e.with_state(qn))?
        .energy;
    Ok(PNumber::from_energy(shape, energy)?.with_state(qn))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnchorSet {
    pub qn: QuantumNumbers,
    pub p_coulomb: f64,
    pub p_log: f64,
    pub p_linear: f64,
    pub p_oscillator: f64,
}

impl AnchorSet {
    /// Anchors with the given interior values and exact endpoints.
    pub fn new(qn: QuantumNumbers, p_log: f64, p_linear: f64) -> Result<Self> {
        if !(p_log > 0.0 && p_linear > 0.0) || !p_log.is_finite() || !p_linear.is_finite() {
            return Err(Error::domain("interior anchors must be positive and finite"));
        }
        Ok(Self {
            qn,
            p_coulomb: qn.coulomb_p(),
            p_log,
            p_linear,
            p_oscillator: qn.oscillator_p(),
        })
    }

    pub fn solve(qn: QuantumNumbers, cfg: &EigenSolveConfig) -> Result<Self> {
        let p_log = solved_p(Shape::Log, qn, cfg)?.value();
        let p_linear = solved_p(Shape::Power(1.0), qn, cfg)?.value();
        Self::new(qn, p_log, p_linear)
    }

    pub fn values(&self) -> [f64; 4] {
        [self.p_coulomb, self.p_log, self.p_linear, self.p_oscillator]
    }
}

/// `P(q) = a + b q + c q² + d q³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PCurve {
    pub qn: QuantumNumbers,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl PCurve {
    pub fn eval(&self, q: f64) -> f64 {
        self.a + q * (self.b + q * (self.c + q * self.d))
    }
}

pub fn build_cubic(anchors: &AnchorSet) -> PCurve {
    let [pm, p0, p1, p2] = anchors.values();
    PCurve {
        qn: anchors.qn,
        a: p0,
        b: -pm / 3.0 - p0 / 2.0 + p1 - p2 / 6.0,
        c: pm / 2.0 - p0 + p1 / 2.0,
        d: -pm / 6.0 + p0 / 2.0 - p1 / 2.0 + p2 / 6.0,
    }
}

/// Approximate `E_{nℓ}(q)` from the cubic; `q = 0` is the log potential.
pub fn interpolated_energy(curve: &PCurve, q: f64) -> Result<f64> {
    if !(-1.0..=2.0).contains(&q) {
        return Err(Error::domain(format!("q = {q} outside [-1, 2]; extrapolation refused")));
    }
    let p = curve.eval(q);
    Ok(if q == 0.0 {
        energy_from_p_log(p)
    } else {
        energy_from_p(q, p)
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Table1Row {
    pub n: u32,
    pub l: u32,
    pub p_log: f64,
    pub p_linear: f64,
    pub e_approx: f64,
    pub e_exact: f64,
    pub percent_error: f64,
}

pub fn table1_row(qn: QuantumNumbers, cfg: &EigenSolveConfig) -> Result<Table1Row> {
    let anchors = AnchorSet::solve(qn, cfg)?;
    let curve = build_cubic(&anchors);
    let e_approx = interpolated_energy(&curve, 0.5)?;
    let e_exact = solve_radial(&Shape::Power(0.5).potential(), qn, cfg)
        .map_err(|e| e.with_state(qn))?
        .energy;
    Ok(Table1Row {
        n: qn.n,
        l: qn.l,
        p_log: anchors.p_log,
        p_linear: anchors.p_linear,
        e_approx,
        e_exact,
        percent_error: 100.0 * (e_approx - e_exact) / e_exact,
    })
}

/// The 25 states `1 ≤ n ≤ 5`, `0 ≤ ℓ ≤ 4`, ordered by `ℓ` then `n`.
pub fn table1(cfg: &EigenSolveConfig) -> Result<Vec<Table1Row>> {
    QuantumNumbers::grid(5, 4)
        .into_par_iter()
        .map(|qn| table1_row(qn, cfg))
        .collect()
}
