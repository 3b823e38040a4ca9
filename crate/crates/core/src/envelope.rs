//! Envelope bounds and the kinetic-potential sum rule.
//!
//! A potential `f` that is a convex (concave) transformation of a soluble
//! basis `h` lies above (below) every tangent `α(t) h + β(t)`, so the
//! eigenvalues of the tangents bound the spectrum of `-Δ + v f` from one
//! side. The envelope over contact points `t` reproduces the semiclassical
//! minimum `min_r { P²/r² + v f(r) }` with the basis P-number.
//!
//! For sums of powers the kinetic potentials add, giving
//! `E ≈ min_r { 1/r² + Σ a_q sgn(q) (P_q r)^q }`. The Coulomb-plus-linear
//! special case `min_r { 1/r² - a/(ν r) + b μ r }` covers four bound modes
//! through the choice of `(ν, μ)`.

use serde::{Deserialize, Serialize};

use crate::eigen::{EigenSolveConfig, QuantumNumbers};
use crate::error::{Error, Result};
use crate::interpolation::solved_p;
use crate::optimize::{minimize_on_interval, minimize_positive};
use crate::p_representation::{semiclassical_energy, PNumber};
use crate::potential::{RadialPotential, Shape};

/// `√(3π/8)`: Coulomb weight of the scale-optimized Gaussian trial state.
pub const GAUSSIAN_NU: f64 = 1.085_401_881_837_401_4;
/// `√(6/π)`: linear weight of the scale-optimized Gaussian trial state.
pub const GAUSSIAN_MU: f64 = 1.381_976_597_885_341_8;

/// Contact point range searched by [`envelope_bound`].
const T_MIN: f64 = 1e-3;
const T_MAX: f64 = 1e3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TangentCoefficients {
    pub t: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// Coefficients of the tangent `α h + β` to `f` at `r = t`.
pub fn tangent_coefficients(
    f: &RadialPotential,
    h: &RadialPotential,
    t: f64,
) -> Result<TangentCoefficients> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("contact point t = {t} must be positive")));
    }
    let dh = h.derivative(t);
    if dh == 0.0 {
        return Err(Error::domain(format!("degenerate basis: h'({t}) = 0")));
    }
    let alpha = f.derivative(t) / dh;
    Ok(TangentCoefficients {
        t,
        alpha,
        beta: f.value(t) - alpha * h.value(t),
    })
}

/// `H(v α) + v β` for a basis spectral function `H`.
pub fn tangential_spectral_function<H: Fn(f64) -> f64>(
    base: H,
    tc: &TangentCoefficients,
    v: f64,
) -> Result<f64> {
    let coupling = v * tc.alpha;
    if !(coupling > 0.0) {
        return Err(Error::domain(format!(
            "effective coupling v·α = {coupling} must be positive"
        )));
    }
    Ok(base(coupling) + v * tc.beta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Upper,
    Lower,
}

/// Envelope of the tangential spectral functions of `-Δ + v f` built on
/// the basis shape of `basis`. The caller asserts the direction: tangents
/// above `f` give an upper bound, tangents below a lower bound.
pub fn envelope_bound(
    f: &RadialPotential,
    basis: &PNumber,
    v: f64,
    direction: Direction,
) -> Result<f64> {
    if !(v > 0.0) {
        return Err(Error::domain("coupling must be positive"));
    }
    let h = basis.shape().potential();
    let sign = match direction {
        Direction::Upper => 1.0,
        Direction::Lower => -1.0,
    };
    let objective = |y: f64| {
        let t = y.exp();
        match tangent_coefficients(f, &h, t)
            .and_then(|tc| tangential_spectral_function(|x| basis.spectral_function(x), &tc, v))
        {
            Ok(e) => sign * e,
            Err(_) => f64::INFINITY,
        }
    };
    let (lo, hi) = (T_MIN.ln(), T_MAX.ln());
    let m = minimize_on_interval(objective, lo, hi, 241)?;
    if !m.value.is_finite() {
        return Err(Error::Minimization(format!(
            "no admissible tangent in t ∈ [{T_MIN}, {T_MAX}]"
        )));
    }
    if m.x == lo || m.x == hi {
        // A flat envelope means f is itself a multiple of the basis.
        let other = objective(if m.x == lo { hi } else { lo });
        if (other - m.value).abs() > 1e-12 * m.value.abs().max(1.0) {
            return Err(Error::Minimization(format!(
                "envelope extremum at the edge of t ∈ [{T_MIN}, {T_MAX}] (t = {})",
                m.x.exp()
            )));
        }
    }
    Ok(sign * m.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OmegaSplit {
    pub value: f64,
    pub omega: f64,
    /// The maximum sits at `ω = 0` or `ω = 1`; `value` is the limit there.
    pub at_boundary: bool,
}

/// `max_{0<ω<1} { ω F1(a/ω) + (1-ω) F2(b/(1-ω)) }`, a lower bound on the
/// ground state of `-Δ + a f1 + b f2` when `F1`, `F2` are the ground-state
/// spectral functions of `f1`, `f2`.
pub fn omega_split_lower_bound<F1, F2>(f1: F1, f2: F2, a: f64, b: f64) -> Result<OmegaSplit>
where
    F1: Fn(f64) -> f64,
    F2: Fn(f64) -> f64,
{
    if a < 0.0 || b < 0.0 || a + b == 0.0 {
        return Err(Error::domain("couplings must be non-negative and not both zero"));
    }
    if b == 0.0 {
        return Ok(OmegaSplit {
            value: f1(a),
            omega: 1.0,
            at_boundary: true,
        });
    }
    if a == 0.0 {
        return Ok(OmegaSplit {
            value: f2(b),
            omega: 0.0,
            at_boundary: true,
        });
    }
    // ω = 1/(1 + e^{-y}); the tails of y reach the boundary limits.
    let split = |y: f64| {
        let w = 1.0 / (1.0 + (-y).exp());
        let w1 = 1.0 / (1.0 + y.exp());
        (w, w1)
    };
    let objective = |y: f64| {
        let (w, w1) = split(y);
        -(w * f1(a / w) + w1 * f2(b / w1))
    };
    let (lo, hi) = (-36.0, 36.0);
    let m = minimize_on_interval(objective, lo, hi, 721)?;
    let (w, _) = split(m.x);
    Ok(OmegaSplit {
        value: -m.value,
        omega: w,
        at_boundary: m.x == lo || m.x == hi,
    })
}

/// `min_r { 1/r² + Σ a sgn(q) (P r)^q }`, with `a ln(P r)` for log terms.
pub fn power_sum_energy(terms: &[(f64, PNumber)]) -> Result<f64> {
    if terms.is_empty() {
        return Err(Error::domain("power sum needs at least one term"));
    }
    if let Some((a, _)) = terms.iter().find(|(a, _)| !(*a > 0.0)) {
        return Err(Error::domain(format!("term weight {a} must be positive")));
    }
    let objective = |r: f64| {
        let mut e = 1.0 / (r * r);
        for (a, p) in terms {
            let x = p.value() * r;
            e += a * match p.shape() {
                Shape::Power(q) => q.signum() * x.powf(q),
                Shape::Log => x.ln(),
            };
        }
        e
    };
    let guess = 1.0 / terms[0].1.value();
    minimize_positive(objective, guess).map(|m| m.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    CoulombEnvelopeLower,
    LinearEnvelopeUpper,
    SumApproximation,
    GaussianUpper,
}

impl BoundMode {
    pub const ALL: [BoundMode; 4] = [
        BoundMode::CoulombEnvelopeLower,
        BoundMode::LinearEnvelopeUpper,
        BoundMode::SumApproximation,
        BoundMode::GaussianUpper,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BoundMode::CoulombEnvelopeLower => "coulomb_envelope_lower",
            BoundMode::LinearEnvelopeUpper => "linear_envelope_upper",
            BoundMode::SumApproximation => "sum_approximation",
            BoundMode::GaussianUpper => "gaussian_upper",
        }
    }
}

/// Weights `(ν, μ)` of `min_r { 1/r² - a/(ν r) + b μ r }` for one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundSpec {
    pub mode: BoundMode,
    pub nu: f64,
    pub mu: f64,
    pub qn: QuantumNumbers,
}

impl BoundSpec {
    /// Builds the spec for `mode`, with `p_linear` the linear-potential
    /// P-number of `qn` (ignored by the Coulomb and Gaussian modes).
    pub fn new(mode: BoundMode, qn: QuantumNumbers, p_linear: f64) -> Result<Self> {
        let coulomb = qn.coulomb_p();
        let (nu, mu) = match mode {
            BoundMode::CoulombEnvelopeLower => (coulomb, coulomb),
            BoundMode::LinearEnvelopeUpper => (p_linear, p_linear),
            BoundMode::SumApproximation => (coulomb, p_linear),
            BoundMode::GaussianUpper => {
                if (qn.n, qn.l) != (1, 0) {
                    return Err(Error::domain(format!(
                        "the Gaussian trial state bounds only (n=1, l=0), not {qn}"
                    )));
                }
                (GAUSSIAN_NU, GAUSSIAN_MU)
            }
        };
        if !(p_linear > 0.0) && matches!(mode, BoundMode::LinearEnvelopeUpper | BoundMode::SumApproximation) {
            return Err(Error::domain("linear P-number must be positive"));
        }
        Ok(Self { mode, nu, mu, qn })
    }

    /// Like [`BoundSpec::new`], solving for the linear P-number.
    pub fn solve(mode: BoundMode, qn: QuantumNumbers, cfg: &EigenSolveConfig) -> Result<Self> {
        let p_linear = match mode {
            BoundMode::LinearEnvelopeUpper | BoundMode::SumApproximation => {
                solved_p(Shape::Power(1.0), qn, cfg)?.value()
            }
            _ => 1.0,
        };
        Self::new(mode, qn, p_linear)
    }

    pub fn is_lower(&self) -> bool {
        match self.mode {
            BoundMode::CoulombEnvelopeLower => true,
            BoundMode::SumApproximation => self.qn.n == 1,
            _ => false,
        }
    }

    pub fn is_upper(&self) -> bool {
        matches!(
            self.mode,
            BoundMode::LinearEnvelopeUpper | BoundMode::GaussianUpper
        )
    }
}

/// Weights-only form of [`coulomb_linear_energy`].
pub fn coulomb_linear_min(a: f64, b: f64, nu: f64, mu: f64) -> Result<f64> {
    if a < 0.0 || b < 0.0 || !a.is_finite() || !b.is_finite() {
        return Err(Error::domain("a and b must be finite and non-negative"));
    }
    if a == 0.0 && b == 0.0 {
        return Err(Error::domain("a and b cannot both vanish"));
    }
    if !(nu > 0.0 && mu > 0.0) {
        return Err(Error::domain("ν and μ must be positive"));
    }
    if b == 0.0 {
        return Ok(-a * a / (4.0 * nu * nu));
    }
    let guess = if a > 0.0 { 2.0 * nu / a } else { (b * mu).powf(-1.0 / 3.0) };
    minimize_positive(|r| 1.0 / (r * r) - a / (nu * r) + b * mu * r, guess).map(|m| m.value)
}

/// `min_r { 1/r² - a/(ν r) + b μ r }` with the weights of `spec`.
pub fn coulomb_linear_energy(a: f64, b: f64, spec: &BoundSpec) -> Result<f64> {
    coulomb_linear_min(a, b, spec.nu, spec.mu)
}

/// Inverse of `λ ↦ min_r { 1/r² - 1/(ν r) + λ μ r }`, valid for
/// `E ≥ -1/(4ν²)`.
pub fn lambda_from_energy(energy: f64, nu: f64, mu: f64) -> Result<f64> {
    if !(nu > 0.0 && mu > 0.0) {
        return Err(Error::domain("ν and μ must be positive"));
    }
    let floor = -1.0 / (4.0 * nu * nu);
    if energy < floor || !energy.is_finite() {
        return Err(Error::domain(format!(
            "E = {energy} lies below the Coulomb limit {floor}"
        )));
    }
    let root = (1.0 + 3.0 * nu * nu * energy).sqrt();
    let root_m1 = 3.0 * nu * nu * energy / (1.0 + root);
    if root_m1.abs() < 1e-6 {
        // Removable 0/0 at E = 0; use the stationary point x = 1/r directly.
        let x = (1.0 + root) / (3.0 * nu);
        return Ok((2.0 * x * x * x - x * x / nu) / mu);
    }
    let ne = nu * energy;
    Ok((2.0 * ne * ne * ne - nu * energy * energy * root_m1) / (mu * root_m1.powi(3)))
}

/// `(a²/ω, b ω²/a³)`: eigenvalues of `-ωΔ - a/r + b r` are the prefactor
/// times those of `-Δ - 1/r + λ r`.
pub fn scale_coulomb_linear(omega: f64, a: f64, b: f64) -> Result<(f64, f64)> {
    if !(omega > 0.0 && a > 0.0) || b < 0.0 {
        return Err(Error::domain("need ω > 0, a > 0, b ≥ 0"));
    }
    Ok((a * a / omega, b * omega * omega / (a * a * a)))
}

/// Gaussian trial upper bound `min_σ { 3/(2σ²) + ⟨V⟩_σ }` for `-Δ - a/r + b r`,
/// in closed form through the Gaussian weights.
pub fn gaussian_coulomb_linear(a: f64, b: f64) -> Result<f64> {
    coulomb_linear_min(a, b, GAUSSIAN_NU, GAUSSIAN_MU)
}

/// Semiclassical energy with the basis P-number for `f`; the envelope value.
pub fn envelope_semiclassical(f: &RadialPotential, basis: &PNumber, v: f64) -> Result<f64> {
    semiclassical_energy(basis, &f.scaled(v))
}
