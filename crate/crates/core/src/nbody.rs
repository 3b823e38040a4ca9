//! Energy bounds for the symmetric ground state of N identical particles.
//!
//! With orthogonal Jacobi coordinates the N-body energy is bracketed by
//! the one-body operator `H = -Δ + v f(r)`: its lowest eigenvalue is a
//! lower bound and its scale-optimized Gaussian expectation an upper bound.

use nalgebra::{DMatrix, Vector3};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{digamma, gamma};

use crate::eigen::{solve_radial, EigenSolveConfig, QuantumNumbers};
use crate::envelope::{coulomb_linear_min, GAUSSIAN_MU, GAUSSIAN_NU};
use crate::error::{Error, Result};
use crate::optimize::minimize_positive;
use crate::potential::RadialPotential;

/// Magnitude of the first zero of the Airy function.
pub const AIRY_ZERO_1: f64 = 2.338_107_410_459_767;

/// `2 (|a₁|/3)^{3/2}`: the ground-state P-number of the linear potential.
pub fn linear_ground_p() -> f64 {
    2.0 * (AIRY_ZERO_1 / 3.0).powf(1.5)
}

#[derive(Debug, Clone, PartialEq)]
pub struct JacobiFrame {
    matrix: DMatrix<f64>,
}

impl JacobiFrame {
    /// Row 1 is the centre of mass, row 2 is `(r₁ - r₂)/√2` and row `k`
    /// separates particle `k` from the centre of the first `k - 1`.
    pub fn new(particles: usize) -> Result<Self> {
        if particles < 2 {
            return Err(Error::domain("a Jacobi frame needs at least two particles"));
        }
        let n = particles;
        let mut b = DMatrix::zeros(n, n);
        let inv = 1.0 / (n as f64).sqrt();
        for j in 0..n {
            b[(0, j)] = inv;
        }
        for k in 2..=n {
            let norm = ((k * (k - 1)) as f64).sqrt();
            for j in 0..k - 1 {
                b[(k - 1, j)] = 1.0 / norm;
            }
            b[(k - 1, k - 1)] = -((k - 1) as f64) / norm;
        }
        Ok(Self { matrix: b })
    }

    pub fn particles(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Largest entry of `|B Bᵀ - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.particles();
        (&self.matrix * self.matrix.transpose() - DMatrix::<f64>::identity(n, n)).amax()
    }

    /// `ρ = B R` for particle positions `R`.
    pub fn transform(&self, positions: &[Vector3<f64>]) -> Result<Vec<Vector3<f64>>> {
        let n = self.particles();
        if positions.len() != n {
            return Err(Error::domain(format!(
                "frame is for {n} particles, got {} positions",
                positions.len()
            )));
        }
        Ok((0..n)
            .map(|i| {
                positions
                    .iter()
                    .enumerate()
                    .fold(Vector3::zeros(), |acc, (j, r)| acc + r * self.matrix[(i, j)])
            })
            .collect())
    }
}

pub fn build_jacobi_frame(particles: usize) -> Result<JacobiFrame> {
    JacobiFrame::new(particles)
}

/// Both sides of `Σ_{i<j} |rᵢ - rⱼ|² = N Σ_{k≥2} |ρ_k|²`.
pub fn pair_sum_identity_check(
    frame: &JacobiFrame,
    positions: &[Vector3<f64>],
) -> Result<(f64, f64)> {
    let rho = frame.transform(positions)?;
    let mut lhs = 0.0;
    for (i, ri) in positions.iter().enumerate() {
        for rj in &positions[i + 1..] {
            lhs += (ri - rj).norm_squared();
        }
    }
    let rhs = positions.len() as f64 * rho[1..].iter().map(|p| p.norm_squared()).sum::<f64>();
    Ok((lhs, rhs))
}

/// Pair interaction between every two particles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PairPotential {
    /// `V₀ f(r / range_a)`.
    Shape {
        depth: f64,
        range_a: f64,
        shape: RadialPotential,
    },
    /// `-coulomb_a / r + b r`.
    CoulombLinear { coulomb_a: f64, b: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NBodyModel {
    pub particles: usize,
    pub mass: f64,
    pub hbar: f64,
    pub pair: PairPotential,
}

impl NBodyModel {
    pub fn new(particles: usize, mass: f64, pair: PairPotential) -> Result<Self> {
        let model = Self {
            particles,
            mass,
            hbar: 1.0,
            pair,
        };
        model.validate()?;
        Ok(model)
    }

    pub fn with_hbar(mut self, hbar: f64) -> Result<Self> {
        self.hbar = hbar;
        self.validate()?;
        Ok(self)
    }

    fn validate(&self) -> Result<()> {
        if self.particles < 2 {
            return Err(Error::domain("need at least two particles"));
        }
        if !(self.mass > 0.0 && self.hbar > 0.0) {
            return Err(Error::domain("mass and ħ must be positive"));
        }
        match &self.pair {
            PairPotential::Shape { depth, range_a, .. } => {
                if !(*depth > 0.0 && *range_a > 0.0) {
                    return Err(Error::domain("depth and range must be positive"));
                }
            }
            PairPotential::CoulombLinear { coulomb_a, b } => {
                if !(*coulomb_a > 0.0) || *b < 0.0 {
                    return Err(Error::domain("need coulomb_a > 0 and b ≥ 0"));
                }
            }
        }
        Ok(())
    }
}

/// The one-body problem `-Δ + potential` whose eigenvalues map to N-body
/// energies by `𝓔 = energy_scale · E`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReducedProblem {
    /// `v` for a shape pair potential, `λ` for Coulomb-plus-linear.
    pub coupling: f64,
    pub energy_scale: f64,
    pub potential: RadialPotential,
}

impl ReducedProblem {
    pub fn physical_energy(&self, dimensionless: f64) -> f64 {
        self.energy_scale * dimensionless
    }

    pub fn dimensionless_energy(&self, physical: f64) -> f64 {
        physical / self.energy_scale
    }
}

pub fn reduce_to_one_body(model: &NBodyModel) -> Result<ReducedProblem> {
    model.validate()?;
    let n = model.particles as f64;
    let omega = model.hbar * model.hbar / model.mass;
    match &model.pair {
        PairPotential::Shape {
            depth,
            range_a,
            shape,
        } => {
            let v = n * depth * range_a * range_a / (2.0 * omega);
            Ok(ReducedProblem {
                coupling: v,
                energy_scale: (n - 1.0) * omega / (range_a * range_a),
                potential: shape.scaled(v),
            })
        }
        PairPotential::CoulombLinear { coulomb_a, b } => {
            // Each pair carries weight N/2, then -ωΔ - A/r + B r scales to
            // (A²/ω)(-Δ - 1/r + λ r).
            let a_eff = n * coulomb_a / 2.0;
            let b_eff = n * b / 2.0;
            let lambda = b_eff * omega * omega / (a_eff * a_eff * a_eff);
            Ok(ReducedProblem {
                coupling: lambda,
                energy_scale: (n - 1.0) * a_eff * a_eff / omega,
                potential: RadialPotential::coulomb_linear(1.0, lambda)?,
            })
        }
    }
}

/// `min_σ { 3/(2σ²) + ⟨V⟩_σ }` over Gaussians `ψ ∝ exp(-r²/(2σ²))`.
pub fn gaussian_upper_energy(pot: &RadialPotential) -> Result<f64> {
    let g32 = gamma(1.5);
    let log_shift = 0.5 * digamma(1.5);
    let mean = |sigma: f64| {
        let mut e = 1.5 / (sigma * sigma);
        for t in pot.power_terms() {
            e += t.coefficient * sigma.powf(t.exponent) * gamma((3.0 + t.exponent) / 2.0) / g32;
        }
        e + pot.log_coefficient() * (sigma.ln() + log_shift)
    };
    minimize_positive(mean, 1.0).map(|m| m.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyBounds {
    pub lower: f64,
    pub upper: f64,
}

/// Lower and Gaussian upper bounds on the symmetric N-body ground state.
///
/// Shape pair potentials use the exact one-body ground state as the lower
/// bound. The Coulomb-plus-linear pair uses the closed-form minimum with
/// weights `(1, 2(|a₁|/3)^{3/2})` below and the Gaussian weights above.
pub fn nbody_energy_bounds(model: &NBodyModel, cfg: &EigenSolveConfig) -> Result<EnergyBounds> {
    let reduced = reduce_to_one_body(model)?;
    let (lower, upper) = match &model.pair {
        PairPotential::Shape { .. } => {
            let ground = QuantumNumbers::new(1, 0)?;
            let lower = solve_radial(&reduced.potential, ground, cfg)?.energy;
            (lower, gaussian_upper_energy(&reduced.potential)?)
        }
        PairPotential::CoulombLinear { .. } => {
            let l = reduced.coupling;
            (
                coulomb_linear_min(1.0, l, 1.0, linear_ground_p())?,
                coulomb_linear_min(1.0, l, GAUSSIAN_NU, GAUSSIAN_MU)?,
            )
        }
    };
    let bounds = EnergyBounds {
        lower: reduced.physical_energy(lower),
        upper: reduced.physical_energy(upper),
    };
    if bounds.lower > bounds.upper + 1e-9 * bounds.upper.abs().max(1e-300) {
        return Err(Error::Inconsistent(format!(
            "N = {}: lower bound {} exceeds upper bound {}",
            model.particles, bounds.lower, bounds.upper
        )));
    }
    Ok(bounds)
}

/// Exact ground state of the reduced problem, the N-body energy for `N = 2`.
pub fn reduced_ground_state(model: &NBodyModel, cfg: &EigenSolveConfig) -> Result<f64> {
    let reduced = reduce_to_one_body(model)?;
    let e = solve_radial(&reduced.potential, QuantumNumbers::new(1, 0)?, cfg)?.energy;
    Ok(reduced.physical_energy(e))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub particles: usize,
    pub b: f64,
    pub lower: f64,
    pub upper: f64,
    /// Direct solve, present for `N = 2` only.
    pub exact: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarkModel {
    pub mass: f64,
    pub coulomb_a: f64,
}

impl Default for QuarkModel {
    fn default() -> Self {
        Self {
            mass: 0.3,
            coulomb_a: 0.35,
        }
    }
}

/// Bounds versus the linear coupling `b` for each particle number.
pub fn quark_model_sweep(
    particle_counts: &[usize],
    model: QuarkModel,
    b_grid: &[f64],
    cfg: &EigenSolveConfig,
) -> Result<Vec<SweepPoint>> {
    use rayon::prelude::*;
    if let Some(b) = b_grid.iter().find(|b| !(**b > 0.0)) {
        return Err(Error::domain(format!("linear coupling b = {b} must be positive")));
    }
    let jobs: Vec<(usize, f64)> = particle_counts
        .iter()
        .flat_map(|&n| b_grid.iter().map(move |&b| (n, b)))
        .collect();
    jobs.into_par_iter()
        .map(|(n, b)| {
            let m = NBodyModel::new(
                n,
                model.mass,
                PairPotential::CoulombLinear {
                    coulomb_a: model.coulomb_a,
                    b,
                },
            )?;
            let bounds = nbody_energy_bounds(&m, cfg)?;
            let exact = if n == 2 {
                Some(reduced_ground_state(&m, cfg)?)
            } else {
                None
            };
            Ok(SweepPoint {
                particles: n,
                b,
                lower: bounds.lower,
                upper: bounds.upper,
                exact,
            })
        })
        .collect()
}
