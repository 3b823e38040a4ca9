//! Command implementations behind the `pspectrum` binary. Each returns an
//! [`OutputRecord`] after checking the bound orderings of its data.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::eigen::{solve_radial, EigenSolveConfig, QuantumNumbers};
use crate::envelope::{envelope_bound, Direction};
use crate::error::{Error, Result};
use crate::interpolation::{solved_p, table1};
use crate::nbody::{quark_model_sweep, QuarkModel};
use crate::output::{Cell, Column, OutputRecord};
use crate::p_representation::PNumber;
use crate::potential::{RadialPotential, Shape};

/// `lo:hi:steps`, the closed interval `[lo, hi]` cut into `steps` equal parts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Grid {
    pub const fn new(lo: f64, hi: f64, steps: usize) -> Self {
        Self { lo, hi, steps }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 0 {
            return vec![self.lo];
        }
        let h = (self.hi - self.lo) / self.steps as f64;
        (0..=self.steps)
            .map(|i| if i == self.steps { self.hi } else { self.lo + h * i as f64 })
            .collect()
    }
}

impl FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::Config(format!("grid `{s}`: {reason}"));
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [lo, hi, steps] = parts.as_slice() else {
            return Err(bad("expected lo:hi:steps"));
        };
        let lo: f64 = lo.parse().map_err(|_| bad("bad lower end"))?;
        let hi: f64 = hi.parse().map_err(|_| bad("bad upper end"))?;
        let steps: usize = steps.parse().map_err(|_| bad("bad step count"))?;
        if !(lo.is_finite() && hi.is_finite()) || hi < lo {
            return Err(bad("need finite lo ≤ hi"));
        }
        Ok(Grid { lo, hi, steps })
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.lo, self.hi, self.steps)
    }
}

pub const DEFAULT_QGRID: Grid = Grid::new(-1.0, 2.0, 60);
pub const DEFAULT_VGRID: Grid = Grid::new(0.1, 10.0, 99);
pub const FIG5_BGRID: Grid = Grid::new(0.01, 1.0, 99);
pub const FIG6_BGRID: Grid = Grid::new(0.0005, 0.01, 95);

/// Figure datasets the CLI can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    Eigenvalues,
    PCurves,
    Envelopes,
    QuarkWide,
    QuarkNarrow,
}

impl Figure {
    pub fn from_id(id: u32) -> Result<Self> {
        Ok(match id {
            1 => Figure::Eigenvalues,
            2 => Figure::PCurves,
            4 => Figure::Envelopes,
            5 => Figure::QuarkWide,
            6 => Figure::QuarkNarrow,
            _ => return Err(Error::Config(format!("unknown figure {id} (choose 1, 2, 4, 5 or 6)"))),
        })
    }

    pub fn id(&self) -> u32 {
        match self {
            Figure::Eigenvalues => 1,
            Figure::PCurves => 2,
            Figure::Envelopes => 4,
            Figure::QuarkWide => 5,
            Figure::QuarkNarrow => 6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    pub qgrid: Option<Grid>,
    pub bgrid: Option<Grid>,
    pub vgrid: Option<Grid>,
    pub tolerance: f64,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            qgrid: None,
            bgrid: None,
            vgrid: None,
            tolerance: EigenSolveConfig::default().energy_tolerance,
        }
    }
}

fn config(tolerance: f64) -> Result<EigenSolveConfig> {
    let cfg = EigenSolveConfig::with_tolerance(tolerance);
    cfg.validate()?;
    Ok(cfg)
}

pub fn cmd_eigen(pot_spec: &str, n: u32, l: u32, tolerance: f64) -> Result<OutputRecord> {
    let pot: RadialPotential = pot_spec.parse()?;
    let qn = QuantumNumbers::new(n, l)?;
    let cfg = config(tolerance)?;
    let res = solve_radial(&pot, qn, &cfg)?;
    let mut rec = OutputRecord::new(
        "eigen",
        vec![
            Column::new("n"),
            Column::new("l"),
            Column::new("energy"),
            Column::new("nodes"),
            Column::new("residual"),
            Column::new("converged"),
        ],
    )
    .param("potential", &pot)
    .param("tolerance", tolerance);
    rec.push(vec![
        n.into(),
        l.into(),
        res.energy.into(),
        res.nodes.into(),
        res.residual.into(),
        res.converged.into(),
    ]);
    Ok(rec)
}

pub fn cmd_table1(tolerance: f64) -> Result<OutputRecord> {
    let cfg = config(tolerance)?;
    let rows = table1(&cfg)?;
    let mut rec = OutputRecord::new(
        "table1",
        vec![
            Column::new("n"),
            Column::new("l"),
            Column::fixed("p_log", 5),
            Column::fixed("p_linear", 5),
            Column::fixed("e_approx", 5),
            Column::fixed("e_exact", 5),
            Column::fixed("percent_error", 3),
        ],
    )
    .param("q", 0.5)
    .param("tolerance", tolerance);
    for r in rows {
        rec.push(vec![
            r.n.into(),
            r.l.into(),
            r.p_log.into(),
            r.p_linear.into(),
            r.e_approx.into(),
            r.e_exact.into(),
            r.percent_error.into(),
        ]);
    }
    Ok(rec)
}

pub fn cmd_fig(figure: Figure, opts: &FigureOptions) -> Result<OutputRecord> {
    let cfg = config(opts.tolerance)?;
    let rec = match figure {
        Figure::Eigenvalues => fig_eigenvalues(opts.qgrid.unwrap_or(DEFAULT_QGRID), &cfg)?,
        Figure::PCurves => fig_p_curves(opts.qgrid.unwrap_or(DEFAULT_QGRID), &cfg)?,
        Figure::Envelopes => fig_envelopes(opts.vgrid.unwrap_or(DEFAULT_VGRID), &cfg)?,
        Figure::QuarkWide => fig_quark(opts.bgrid.unwrap_or(FIG5_BGRID), &cfg)?,
        Figure::QuarkNarrow => fig_quark(opts.bgrid.unwrap_or(FIG6_BGRID), &cfg)?,
    };
    Ok(rec
        .param("figure", figure.id())
        .param("tolerance", opts.tolerance))
}

/// States plotted in the spectrum figures: `n ≤ 5`, `ℓ ≤ 5`.
fn figure_states() -> Vec<QuantumNumbers> {
    QuantumNumbers::grid(5, 5)
}

fn check_q_range(grid: &Grid) -> Result<()> {
    if grid.lo < -1.0 || grid.hi > 2.0 {
        return Err(Error::Config(format!("q grid {grid} must lie within [-1, 2]")));
    }
    Ok(())
}

fn per_state<T, F>(states: &[QuantumNumbers], points: &[f64], f: F) -> Result<Vec<Vec<T>>>
where
    T: Send,
    F: Fn(QuantumNumbers, f64) -> Result<T> + Sync,
{
    states
        .par_iter()
        .map(|&qn| points.iter().map(|&q| f(qn, q)).collect())
        .collect()
}

fn fig_eigenvalues(grid: Grid, cfg: &EigenSolveConfig) -> Result<OutputRecord> {
    check_q_range(&grid)?;
    let qs: Vec<f64> = grid.points().into_iter().filter(|&q| q != 0.0).collect();
    let states = figure_states();
    let energies = per_state(&states, &qs, |qn, q| {
        if let Some(p) = PNumber::exact(Shape::Power(q), qn) {
            return Ok(p.energy());
        }
        Ok(solve_radial(&Shape::Power(q).potential(), qn, cfg)
            .map_err(|e| e.with_state(qn))?
            .energy)
    })?;
    let mut rec = OutputRecord::new(
        "fig1",
        vec![
            Column::new("n"),
            Column::new("l"),
            Column::new("branch"),
            Column::new("q"),
            Column::new("energy"),
        ],
    )
    .param("qgrid", grid)
    .param("states", "n<=5, l<=5; l=5 not in the reference table");
    for (qn, es) in states.iter().zip(&energies) {
        // Each branch rises away from ±1 toward its endpoint in |q|.
        for pair in qs.iter().zip(es).collect::<Vec<_>>().windows(2) {
            let ((q0, e0), (q1, e1)) = (pair[0], pair[1]);
            let same_branch = q0.signum() == q1.signum();
            let ok = if *q0 > 0.0 { e1 > e0 } else { e1 < e0 };
            if same_branch && !ok {
                return Err(Error::Inconsistent(format!(
                    "{qn}: eigenvalue not monotone between q = {q0} and {q1}"
                )));
            }
        }
        for (&q, &e) in qs.iter().zip(es) {
            let branch: i64 = if q > 0.0 { 1 } else { -1 };
            rec.push(vec![qn.n.into(), qn.l.into(), Cell::Int(branch), q.into(), e.into()]);
        }
    }
    Ok(rec)
}

fn fig_p_curves(grid: Grid, cfg: &EigenSolveConfig) -> Result<OutputRecord> {
    check_q_range(&grid)?;
    let mut qs = grid.points();
    if !qs.contains(&0.0) && grid.lo < 0.0 && grid.hi > 0.0 {
        qs.push(0.0);
        qs.sort_by(f64::total_cmp);
    }
    let states = figure_states();
    let ps = per_state(&states, &qs, |qn, q| {
        Ok(solved_p(Shape::at(q)?, qn, cfg)?.value())
    })?;
    let mut rec = OutputRecord::new(
        "fig2",
        vec![Column::new("n"), Column::new("l"), Column::new("q"), Column::new("p")],
    )
    .param("qgrid", grid)
    .param("states", "n<=5, l<=5; l=5 not in the reference table");
    for (qn, row) in states.iter().zip(&ps) {
        if row.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::Inconsistent(format!("{qn}: P(q) not increasing")));
        }
        for (&q, &p) in qs.iter().zip(row) {
            rec.push(vec![qn.n.into(), qn.l.into(), q.into(), p.into()]);
        }
    }
    Ok(rec)
}

fn fig_envelopes(grid: Grid, cfg: &EigenSolveConfig) -> Result<OutputRecord> {
    if !(grid.lo > 0.0) {
        return Err(Error::Config(format!("coupling grid {grid} must be positive")));
    }
    let qn = QuantumNumbers::new(2, 4)?;
    let shape = RadialPotential::coulomb_linear(1.0, 1.0)?;
    let coulomb = PNumber::exact(Shape::Power(-1.0), qn).expect("Coulomb endpoint");
    let linear = solved_p(Shape::Power(1.0), qn, cfg)?;
    let rows: Vec<(f64, f64, f64, f64)> = grid
        .points()
        .par_iter()
        .map(|&v| {
            let lower = envelope_bound(&shape, &coulomb, v, Direction::Lower)?;
            let upper = envelope_bound(&shape, &linear, v, Direction::Upper)?;
            let exact = solve_radial(&shape.scaled(v), qn, cfg)?.energy;
            if !(lower <= exact && exact <= upper) {
                return Err(Error::Inconsistent(format!(
                    "v = {v}: envelope bounds {lower} ≤ {exact} ≤ {upper} violated"
                )));
            }
            Ok((v, lower, exact, upper))
        })
        .collect::<Result<_>>()?;
    let mut rec = OutputRecord::new(
        "fig4",
        vec![
            Column::new("v"),
            Column::new("lower"),
            Column::new("exact"),
            Column::new("upper"),
        ],
    )
    .param("vgrid", grid)
    .param("potential", &shape)
    .param("state", qn);
    for (v, lo, ex, up) in rows {
        rec.push(vec![v.into(), lo.into(), ex.into(), up.into()]);
    }
    Ok(rec)
}

fn fig_quark(grid: Grid, cfg: &EigenSolveConfig) -> Result<OutputRecord> {
    if !(grid.lo > 0.0) {
        return Err(Error::Config(format!("b grid {grid} must be positive")));
    }
    let model = QuarkModel::default();
    let points = quark_model_sweep(&[2, 3, 4, 5], model, &grid.points(), cfg)?;
    let mut rec = OutputRecord::new(
        "quark_sweep",
        vec![
            Column::new("particles"),
            Column::new("b"),
            Column::new("lower"),
            Column::new("upper"),
            Column::new("exact"),
        ],
    )
    .param("bgrid", grid)
    .param("mass", model.mass)
    .param("coulomb_a", model.coulomb_a)
    .param("units", "hbar = c = 1");
    for p in points {
        let inside = p.exact.is_none_or(|e| p.lower <= e && e <= p.upper);
        if p.lower > p.upper || !inside {
            return Err(Error::Inconsistent(format!(
                "N = {}, b = {}: bounds out of order",
                p.particles, p.b
            )));
        }
        rec.push(vec![
            p.particles.into(),
            p.b.into(),
            p.lower.into(),
            p.upper.into(),
            p.exact.into(),
        ]);
    }
    Ok(rec)
}
