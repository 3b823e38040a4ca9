//! The P-representation of power-law and log spectra.
//!
//! Every eigenvalue of `-Δ + sgn(q) r^q` (or `-Δ + ln r`) is recovered
//! exactly from a single positive number `P` by
//!
//! ```text
//! E = min_{r>0} { P²/r² + V(r) }
//! ```
//!
//! and the kinetic potential of the state is `f̄(s) = sgn(q) (P/√s)^q`
//! (`ln(P/√s)` for the log). `P` varies smoothly and monotonically with `q`
//! across `[-1, 2]`, log included at `q = 0`.

use std::f64::consts::E;

use serde::{Deserialize, Serialize};

use crate::eigen::QuantumNumbers;
use crate::error::{Error, Result};
use crate::optimize::{minimize_positive, Minimum};
use crate::potential::{RadialPotential, Shape};

/// `√(2e)`, the log-potential conversion factor.
pub fn sqrt_two_e() -> f64 {
    (2.0 * E).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PNumber {
    value: f64,
    shape: Shape,
    state: Option<QuantumNumbers>,
}

impl PNumber {
    pub fn new(value: f64, shape: Shape) -> Result<Self> {
        if !(value > 0.0) || !value.is_finite() {
            return Err(Error::domain(format!("P must be positive and finite, got {value}")));
        }
        Ok(Self {
            value,
            shape,
            state: None,
        })
    }

    /// The exactly known P-numbers: `n + ℓ` at `q = -1` and `2n + ℓ - ½` at `q = 2`.
    pub fn exact(shape: Shape, qn: QuantumNumbers) -> Option<Self> {
        let value = match shape {
            Shape::Power(-1.0) => qn.coulomb_p(),
            Shape::Power(2.0) => qn.oscillator_p(),
            _ => return None,
        };
        Some(Self {
            value,
            shape,
            state: Some(qn),
        })
    }

    /// P-number of a bare eigenvalue of `-Δ + sgn(q) r^q` or `-Δ + ln r`.
    pub fn from_energy(shape: Shape, energy: f64) -> Result<Self> {
        let value = match shape {
            Shape::Power(q) => p_from_energy(q, energy)?,
            Shape::Log => p_log_from_energy(energy),
        };
        Self::new(value, shape)
    }

    pub fn with_state(mut self, qn: QuantumNumbers) -> Self {
        self.state = Some(qn);
        self
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn state(&self) -> Option<QuantumNumbers> {
        self.state
    }

    /// The bare eigenvalue this P-number represents.
    pub fn energy(&self) -> f64 {
        match self.shape {
            Shape::Power(q) => energy_from_p(q, self.value),
            Shape::Log => energy_from_p_log(self.value),
        }
    }

    /// Kinetic potential `f̄(s)` of the represented state.
    pub fn kinetic_potential(&self, s: f64) -> f64 {
        match self.shape {
            Shape::Power(q) => kinetic_potential_power(q, self.value, s),
            Shape::Log => kinetic_potential_log(self.value, s),
        }
    }

    /// Spectral function `F(v)`: the eigenvalue of `-Δ + v·shape`.
    pub fn spectral_function(&self, v: f64) -> f64 {
        match self.shape {
            Shape::Power(q) => self.energy() * v.powf(2.0 / (2.0 + q)),
            Shape::Log => v * self.energy() - 0.5 * v * v.ln(),
        }
    }
}

/// A point `(s, f̄(s))` on a kinetic-potential curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KineticPotentialSample {
    pub s: f64,
    pub f_bar: f64,
}

/// A point `(v, F(v))` on a spectral-function curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralFunctionSample {
    pub v: f64,
    pub f: f64,
}

/// `P = |E|^{(2+q)/(2q)} [2/(2+q)]^{1/q} |q/(2+q)|^{½}` for `q ≠ 0`.
pub fn p_from_energy(q: f64, energy: f64) -> Result<f64> {
    if q == 0.0 {
        return Err(Error::domain("q = 0 is the log potential; use p_log_from_energy"));
    }
    if !(q > -2.0) || !q.is_finite() {
        return Err(Error::domain(format!("power q = {q} outside the family")));
    }
    if energy == 0.0 || energy.signum() != q.signum() {
        return Err(Error::domain(format!(
            "eigenvalue {energy} must share the sign of q = {q}"
        )));
    }
    let p = energy.abs().powf((2.0 + q) / (2.0 * q))
        * (2.0 / (2.0 + q)).powf(1.0 / q)
        * (q / (2.0 + q)).abs().sqrt();
    Ok(p)
}

/// `E = sgn(q) (q/2 + 1) (2P²/|q|)^{q/(q+2)}`, the closed-form minimum of
/// `P²/r² + sgn(q) r^q`.
pub fn energy_from_p(q: f64, p: f64) -> f64 {
    q.signum() * (q / 2.0 + 1.0) * (2.0 * p * p / q.abs()).powf(q / (q + 2.0))
}

/// `P = e^E / √(2e)`.
pub fn p_log_from_energy(energy: f64) -> f64 {
    energy.exp() / sqrt_two_e()
}

/// `E = ln(√(2e) P)`.
pub fn energy_from_p_log(p: f64) -> f64 {
    (sqrt_two_e() * p).ln()
}

/// `min_{r>0} { P²/r² + V(r) }`; the minimizing radius is returned as `x`.
pub fn semiclassical_minimum(p: f64, pot: &RadialPotential) -> Result<Minimum> {
    if !(p > 0.0) {
        return Err(Error::domain("P must be positive"));
    }
    let p2 = p * p;
    // Start near the balance point of the kinetic term and the potential.
    minimize_positive(|r| p2 / (r * r) + pot.value(r), p)
        .map_err(|e| Error::domain(format!("no unique minimum of P²/r² + V(r): {e}")))
}

pub fn semiclassical_energy(p: &PNumber, pot: &RadialPotential) -> Result<f64> {
    semiclassical_minimum(p.value(), pot).map(|m| m.value)
}

/// `f̄(s) = sgn(q) (P/√s)^q`.
pub fn kinetic_potential_power(q: f64, p: f64, s: f64) -> f64 {
    q.signum() * (p / s.sqrt()).powf(q)
}

/// `f̄(s) = ln(P/√s)`.
pub fn kinetic_potential_log(p: f64, s: f64) -> f64 {
    (p / s.sqrt()).ln()
}

/// `K(r) = (P/r)²`, the same for every power.
pub fn k_function(p: f64, r: f64) -> f64 {
    let x = p / r;
    x * x
}

/// `F(v) = min_{s>0} { s + v f̄(s) }`.
pub fn spectral_from_kinetic<F: Fn(f64) -> f64>(f_bar: F, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain("coupling must be positive"));
    }
    minimize_positive(|s| s + v * f_bar(s), 1.0)
        .map(|m| m.value)
        .map_err(|e| Error::Minimization(format!("min over s of s + v f̄(s) at v = {v}: {e}")))
}

/// Relative central-difference step used by the Legendre maps.
const LEGENDRE_STEP: f64 = 1e-4;

fn central_derivative<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let h = LEGENDRE_STEP * x.abs();
    if h == 0.0 || x + h == x || !h.is_finite() {
        return Err(Error::Minimization(format!("derivative step underflow at {x}")));
    }
    Ok((f(x + h) - f(x - h)) / (2.0 * h))
}

/// Legendre pair of a spectral function at coupling `v`:
/// `s = F(v) - v F'(v)`, `f̄(s) = F'(v)`.
pub fn legendre_pair<F: Fn(f64) -> f64>(spectral: F, v: f64) -> Result<KineticPotentialSample> {
    let slope = central_derivative(&spectral, v)?;
    Ok(KineticPotentialSample {
        s: spectral(v) - v * slope,
        f_bar: slope,
    })
}

/// Inverse map from a kinetic potential at `s`: `1/v = -f̄'(s)`,
/// `F(v)/v = f̄(s) - s f̄'(s)`.
pub fn legendre_inverse<F: Fn(f64) -> f64>(f_bar: F, s: f64) -> Result<SpectralFunctionSample> {
    let slope = central_derivative(&f_bar, s)?;
    if !(slope < 0.0) {
        return Err(Error::domain("kinetic potential must be decreasing"));
    }
    let v = -1.0 / slope;
    Ok(SpectralFunctionSample {
        v,
        f: v * (f_bar(s) - s * slope),
    })
}
