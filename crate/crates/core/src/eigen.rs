//! Discrete eigenvalues of `-Δ + V(r)` for central potentials.
//!
//! The reduced radial equation `u'' = (V + ℓ(ℓ+1)/r² - E) u` is shot in
//! Prüfer form, `u = ρ sin θ`, `u' = ρ cos θ`, so that
//!
//! ```text
//! θ' = cos²θ + (E - V - ℓ(ℓ+1)/r²) sin²θ
//! ```
//!
//! The angle is integrated outward from the regular series start at `r_min`
//! and inward from a decaying WKB start at the truncation radius, both in
//! `x = ln r`. The two meet at the outer classical turning point, and the
//! total phase `θ_out - θ_in` there increases monotonically with `E`, passing
//! `nπ` exactly at the `n`-th eigenvalue. Each multiple of `π` is one node,
//! so the phase both selects the branch and polishes the root.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ode::Dopri5;
use crate::optimize::{brent_root, minimize_positive};
use crate::potential::{Asymptote, RadialPotential};

/// Amplitude e-folds of forbidden-region decay kept beyond the turning point.
const DECAY_EFOLDS: f64 = 25.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub n: u32,
    pub l: u32,
}

impl QuantumNumbers {
    pub fn new(n: u32, l: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("radial index n starts at 1"));
        }
        Ok(Self { n, l })
    }

    /// Number of interior nodes of the radial function.
    pub fn nodes(&self) -> u32 {
        self.n - 1
    }

    /// `n + ℓ`, the Coulomb P-number.
    pub fn coulomb_p(&self) -> f64 {
        (self.n + self.l) as f64
    }

    /// `2n + ℓ - ½`, the oscillator P-number.
    pub fn oscillator_p(&self) -> f64 {
        (2 * self.n + self.l) as f64 - 0.5
    }

    /// All states with `1 <= n <= n_max`, `0 <= ℓ <= l_max`, ordered by `ℓ` then `n`.
    pub fn grid(n_max: u32, l_max: u32) -> Vec<Self> {
        (0..=l_max)
            .flat_map(|l| (1..=n_max).map(move |n| Self { n, l }))
            .collect()
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, l={})", self.n, self.l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenSolveConfig {
    /// Start of the outward integration.
    pub r_min: f64,
    /// Hard cap on the adaptively chosen truncation radius.
    pub r_max: f64,
    /// Minimum number of integration steps across `[ln r_min, ln r_max]`.
    pub grid_points: usize,
    /// Relative energy tolerance.
    pub energy_tolerance: f64,
    pub max_bracket_expansions: usize,
}

impl Default for EigenSolveConfig {
    fn default() -> Self {
        Self {
            r_min: 1e-6,
            r_max: 1e5,
            grid_points: 1000,
            energy_tolerance: 1e-9,
            max_bracket_expansions: 60,
        }
    }
}

impl EigenSolveConfig {
    pub fn with_tolerance(tol: f64) -> Self {
        Self {
            energy_tolerance: tol,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.r_min > 0.0 && self.r_min < self.r_max && self.r_max.is_finite()) {
            return Err(Error::Config(format!(
                "need 0 < r_min < r_max, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if self.grid_points < 1000 {
            return Err(Error::Config(format!(
                "grid_points must be at least 1000, got {}",
                self.grid_points
            )));
        }
        if !(self.energy_tolerance > 0.0) {
            return Err(Error::Config("energy_tolerance must be positive".into()));
        }
        Ok(())
    }

    fn ode_tolerance(&self) -> f64 {
        (self.energy_tolerance * 1e-3).clamp(1e-14, 1e-8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EigenResult {
    pub energy: f64,
    pub nodes: u32,
    /// Relative width of the final energy bracket.
    pub residual: f64,
    pub converged: bool,
}

/// Radial problem at fixed potential and state.
struct Radial<'a> {
    pot: &'a RadialPotential,
    qn: QuantumNumbers,
    cfg: &'a EigenSolveConfig,
    centrifugal: f64,
    ode: Dopri5,
}

/// Integration geometry at one trial energy.
#[derive(Debug, Clone, Copy)]
struct Geometry {
    x_match: f64,
    x_max: f64,
    theta_max: f64,
}

impl<'a> Radial<'a> {
    fn new(pot: &'a RadialPotential, qn: QuantumNumbers, cfg: &'a EigenSolveConfig) -> Self {
        let l = qn.l as f64;
        let span = (cfg.r_max / cfg.r_min).ln();
        Self {
            pot,
            qn,
            cfg,
            centrifugal: l * (l + 1.0),
            ode: Dopri5::new(cfg.ode_tolerance(), span / cfg.grid_points as f64),
        }
    }

    fn has_well_below(&self, threshold: f64) -> bool {
        let mut r = self.cfg.r_min;
        while r < self.cfg.r_max {
            if self.pot.value(r) < threshold {
                return true;
            }
            r *= 1.05;
        }
        false
    }

    fn v_eff(&self, r: f64) -> f64 {
        self.pot.value(r) + self.centrifugal / (r * r)
    }

    /// `dθ/dx` with `x = ln r`.
    fn phase_rate(&self, x: f64, theta: f64, e: f64) -> f64 {
        let r = x.exp();
        let (s, c) = theta.sin_cos();
        r * c * c + (r * (e - self.pot.value(r)) - self.centrifugal / r) * s * s
    }

    /// Regular start `u ~ r^{ℓ+1}(1 + c₁ r)` with `c₁` fixed by the `1/r` term.
    fn theta_start(&self) -> f64 {
        let r = self.cfg.r_min;
        let lp1 = self.qn.l as f64 + 1.0;
        let c1 = self.pot.coulomb_coefficient() / (2.0 * lp1);
        let ratio = r * (1.0 + c1 * r) / (lp1 * (1.0 + c1 * r) + c1 * r);
        ratio.atan()
    }

    fn geometry(&self, e: f64) -> Geometry {
        let r_min = self.cfg.r_min;
        let r_cap = self.cfg.r_max;
        let factor: f64 = 1.02;
        // Last classically allowed sample, or the bottom of the well when the
        // energy lies below it.
        let mut r = r_min;
        let mut last_allowed = None;
        let mut well = (r_min, f64::INFINITY);
        while r < r_cap {
            let v = self.v_eff(r);
            if v < e {
                last_allowed = Some(r);
            }
            if v < well.1 {
                well = (r, v);
            }
            r *= factor;
        }
        let r_turn = match last_allowed {
            Some(lo) => {
                let mut lo = lo;
                let mut hi = (lo * factor).min(r_cap);
                if self.v_eff(hi) < e {
                    hi = r_cap;
                    lo = hi;
                }
                for _ in 0..60 {
                    let mid = (lo * hi).sqrt();
                    if self.v_eff(mid) < e {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                0.5 * (lo + hi)
            }
            None => well.0,
        };
        let r_turn = r_turn.clamp(r_min * 10.0, r_cap / 10.0);

        // Accumulate ∫κ dr beyond the turning point.
        let mut efolds = 0.0;
        let mut r = r_turn;
        let mut kappa_prev = (self.v_eff(r) - e).max(0.0).sqrt();
        while efolds < DECAY_EFOLDS && r < r_cap {
            let r_next = (r * 1.01).min(r_cap);
            let kappa = (self.v_eff(r_next) - e).max(0.0).sqrt();
            efolds += 0.5 * (kappa + kappa_prev) * (r_next - r);
            kappa_prev = kappa;
            r = r_next;
        }
        let r_out = r.max(r_turn * 1.01);
        let k2 = self.v_eff(r_out) - e;
        // Decaying WKB log-derivative u'/u = -κ, or Dirichlet if not forbidden.
        let theta_max = if k2 > 0.0 {
            -(1.0 / k2.sqrt()).atan()
        } else {
            0.0
        };
        Geometry {
            x_match: r_turn.ln(),
            x_max: r_out.ln(),
            theta_max,
        }
    }

    /// Total phase `θ_out(c) - θ_in(c)` and the interior node count.
    fn phase(&self, e: f64) -> Result<(f64, u32)> {
        let g = self.geometry(e);
        let x_min = self.cfg.r_min.ln();
        let rate = |x: f64, th: f64| self.phase_rate(x, th, e);
        let th_out = self.ode.integrate(rate, x_min, self.theta_start(), g.x_match)?;
        let th_in = self.ode.integrate(rate, g.x_max, g.theta_max, g.x_match)?;
        let nodes_out = (th_out / PI).floor().max(0.0);
        let nodes_in = ((-th_in / PI).ceil() - 1.0).max(0.0);
        Ok((th_out - th_in, (nodes_out + nodes_in) as u32))
    }

    fn mismatch(&self, e: f64) -> Result<f64> {
        Ok(self.phase(e)?.0 - self.qn.n as f64 * PI)
    }

    /// Semiclassical starting estimate: `min_r {P²/r² + V(r)}` with `P`
    /// interpolated linearly between the exact Coulomb and oscillator values.
    fn estimate(&self) -> f64 {
        let q = self.pot.leading_exponent().clamp(-1.0, 2.0);
        let p = self.qn.coulomb_p() + (q + 1.0) / 3.0 * (self.qn.n as f64 - 0.5);
        let p2 = p * p;
        match minimize_positive(|r| p2 / (r * r) + self.pot.value(r), 1.0) {
            Ok(m) if m.value.is_finite() => m.value,
            _ => match self.pot.asymptote() {
                Asymptote::Finite(t) => t - 1.0,
                _ => 1.0,
            },
        }
    }

    fn bracket_failure(&self, expansions: usize, lo: f64, hi: f64) -> Error {
        Error::BracketNotFound {
            state: self.qn,
            expansions,
            lo,
            hi,
        }
    }

    fn solve(&self) -> Result<EigenResult> {
        let threshold = match self.pot.asymptote() {
            Asymptote::MinusInfinity => {
                return Err(Error::domain(
                    "potential is unbounded below at large r; no discrete spectrum",
                ))
            }
            Asymptote::Finite(t) if !self.has_well_below(t) => {
                return Err(Error::domain(format!(
                    "potential never drops below its threshold {t}; no bound states"
                )))
            }
            Asymptote::Finite(t) => Some(t),
            Asymptote::PlusInfinity => None,
        };
        let max_exp = self.cfg.max_bracket_expansions;
        let mut e0 = self.estimate();
        if let Some(t) = threshold {
            if e0 >= t {
                e0 = t - 1.0;
            }
        }
        let width0 = 0.05 * e0.abs().max(1e-3);

        let f0 = self.mismatch(e0)?;
        let (mut lo, mut flo, mut hi, mut fhi);
        if f0 < 0.0 {
            lo = e0;
            flo = f0;
            let mut k = 0;
            loop {
                // Geometric steps, never more than halfway to the threshold.
                let step = e0 + width0 * 2f64.powi(k as i32);
                hi = match threshold {
                    Some(t) => step.min(0.5 * (t + lo)),
                    None => step,
                };
                fhi = self.mismatch(hi)?;
                if fhi >= 0.0 {
                    break;
                }
                lo = hi;
                flo = fhi;
                k += 1;
                if k > max_exp {
                    return Err(self.bracket_failure(k, lo, hi));
                }
            }
        } else {
            hi = e0;
            fhi = f0;
            let mut k = 0;
            loop {
                lo = e0 - width0 * 2f64.powi(k as i32);
                flo = self.mismatch(lo)?;
                if flo < 0.0 {
                    break;
                }
                hi = lo;
                fhi = flo;
                k += 1;
                if k > max_exp {
                    return Err(self.bracket_failure(k, lo, hi));
                }
            }
        }

        let tol = self.cfg.energy_tolerance;
        let root = brent_root(
            |e| self.mismatch(e),
            lo,
            hi,
            flo,
            fhi,
            0.5 * tol,
            1e-300,
            200,
        )?;
        let residual = (root.hi - root.lo) / root.x.abs().max(f64::MIN_POSITIVE);
        if !root.converged || residual > tol {
            return Err(Error::NotConverged {
                state: self.qn,
                lo: root.lo,
                hi: root.hi,
            });
        }
        let (_, nodes) = self.phase(root.x)?;
        Ok(EigenResult {
            energy: root.x,
            nodes,
            residual,
            converged: nodes == self.qn.nodes(),
        })
    }
}

/// `n`-th eigenvalue in the `ℓ` subspace of `-Δ + V(r)`.
pub fn solve_radial(
    pot: &RadialPotential,
    qn: QuantumNumbers,
    cfg: &EigenSolveConfig,
) -> Result<EigenResult> {
    cfg.validate()?;
    QuantumNumbers::new(qn.n, qn.l)?;
    let result = Radial::new(pot, qn, cfg).solve()?;
    if !result.converged {
        return Err(Error::Inconsistent(format!(
            "{qn}: converged energy {} has {} nodes, expected {}",
            result.energy,
            result.nodes,
            qn.nodes()
        )));
    }
    Ok(result)
}

/// Eigenvalue of `-ωΔ + V(r)`, solved as `ω` times that of `-Δ + V/ω`.
pub fn solve_radial_with_kinetic(
    omega: f64,
    pot: &RadialPotential,
    qn: QuantumNumbers,
    cfg: &EigenSolveConfig,
) -> Result<EigenResult> {
    if !(omega > 0.0) {
        return Err(Error::domain("kinetic factor must be positive"));
    }
    let mut res = solve_radial(&pot.scaled(1.0 / omega), qn, cfg)?;
    res.energy *= omega;
    Ok(res)
}

/// Eigenvalue of `-ωΔ + v sgn(q) r^q` from the bare eigenvalue `e_base` of
/// `-Δ + sgn(q) r^q`: `ω (v/ω)^{2/(2+q)} e_base`.
pub fn scale_power_eigenvalue(omega: f64, v: f64, q: f64, e_base: f64) -> Result<f64> {
    if q <= -2.0 {
        return Err(Error::domain(format!("power q = {q} outside the family (q > -2)")));
    }
    if !(omega > 0.0 && v > 0.0) {
        return Err(Error::domain("ω and v must be positive"));
    }
    Ok(omega * (v / omega).powf(2.0 / (2.0 + q)) * e_base)
}

/// Eigenvalue of `-ωΔ + v ln r` from the bare log eigenvalue:
/// `v E_L - ½ v ln(v/ω)`.
pub fn scale_log_eigenvalue(omega: f64, v: f64, e_log: f64) -> Result<f64> {
    if !(omega > 0.0 && v > 0.0) {
        return Err(Error::domain("ω and v must be positive"));
    }
    Ok(v * e_log - 0.5 * v * (v / omega).ln())
}
