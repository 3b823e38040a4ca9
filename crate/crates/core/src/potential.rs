//! Central potentials built from power-law and logarithmic terms.
//!
//! A potential is `V(r) = Σ cᵢ r^{qᵢ} + c_log ln r` with every exponent in
//! `[-1, 2] \ {0}`. The logarithm plays the role of the `q = 0` member of the
//! family and is always carried separately.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MIN_EXPONENT: f64 = -1.0;
pub const MAX_EXPONENT: f64 = 2.0;

/// The shape of a single-term potential: `sgn(q) r^q` or `ln r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Shape {
    Power(f64),
    Log,
}

impl Shape {
    pub fn power(q: f64) -> Result<Self> {
        check_exponent(q)?;
        Ok(Shape::Power(q))
    }

    /// Exponent of the shape, with the log shape sitting at `q = 0`.
    pub fn exponent(&self) -> f64 {
        match *self {
            Shape::Power(q) => q,
            Shape::Log => 0.0,
        }
    }

    /// Shape at position `q` of the family: `Log` for `q == 0`.
    pub fn at(q: f64) -> Result<Self> {
        if q == 0.0 {
            Ok(Shape::Log)
        } else {
            Shape::power(q)
        }
    }

    pub fn potential(&self) -> RadialPotential {
        match *self {
            Shape::Power(q) => RadialPotential::pure_power(q).expect("validated exponent"),
            Shape::Log => RadialPotential::log(),
        }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Shape::Power(q) => write!(f, "pow:{q}"),
            Shape::Log => write!(f, "log"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerTerm {
    pub coefficient: f64,
    pub exponent: f64,
}

/// Behaviour of `V(r)` as `r → ∞`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Asymptote {
    PlusInfinity,
    MinusInfinity,
    Finite(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialPotential {
    power_terms: Vec<PowerTerm>,
    log_coefficient: f64,
}

fn check_exponent(q: f64) -> Result<()> {
    if !q.is_finite() || q == 0.0 || !(MIN_EXPONENT..=MAX_EXPONENT).contains(&q) {
        return Err(Error::domain(format!(
            "exponent {q} outside [-1, 2] \\ {{0}} (use the log term for q = 0)"
        )));
    }
    Ok(())
}

impl RadialPotential {
    pub fn new(power_terms: Vec<PowerTerm>, log_coefficient: f64) -> Result<Self> {
        for t in &power_terms {
            check_exponent(t.exponent)?;
            if !t.coefficient.is_finite() {
                return Err(Error::domain("non-finite coefficient"));
            }
        }
        if !log_coefficient.is_finite() {
            return Err(Error::domain("non-finite log coefficient"));
        }
        let pot = Self {
            power_terms,
            log_coefficient,
        };
        if pot.is_zero() {
            return Err(Error::domain("potential has no non-zero terms"));
        }
        Ok(pot)
    }

    /// `sgn(q) r^q`.
    pub fn pure_power(q: f64) -> Result<Self> {
        check_exponent(q)?;
        Ok(Self {
            power_terms: vec![PowerTerm {
                coefficient: q.signum(),
                exponent: q,
            }],
            log_coefficient: 0.0,
        })
    }

    /// `ln r`.
    pub fn log() -> Self {
        Self {
            power_terms: Vec::new(),
            log_coefficient: 1.0,
        }
    }

    /// `-a/r + b r`.
    pub fn coulomb_linear(a: f64, b: f64) -> Result<Self> {
        let mut terms = Vec::new();
        if a != 0.0 {
            terms.push(PowerTerm {
                coefficient: -a,
                exponent: -1.0,
            });
        }
        if b != 0.0 {
            terms.push(PowerTerm {
                coefficient: b,
                exponent: 1.0,
            });
        }
        Self::new(terms, 0.0)
    }

    pub fn power_terms(&self) -> &[PowerTerm] {
        &self.power_terms
    }

    pub fn log_coefficient(&self) -> f64 {
        self.log_coefficient
    }

    fn is_zero(&self) -> bool {
        self.log_coefficient == 0.0 && self.power_terms.iter().all(|t| t.coefficient == 0.0)
    }

    /// The single shape this potential is a positive multiple of, if any.
    pub fn pure_shape(&self) -> Option<(Shape, f64)> {
        let live: Vec<_> = self
            .power_terms
            .iter()
            .filter(|t| t.coefficient != 0.0)
            .collect();
        match (live.as_slice(), self.log_coefficient) {
            ([t], l) if l == 0.0 && t.coefficient * t.exponent.signum() > 0.0 => {
                Some((Shape::Power(t.exponent), t.coefficient.abs()))
            }
            ([], l) if l > 0.0 => Some((Shape::Log, l)),
            _ => None,
        }
    }

    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::domain(format!("potential evaluated at r = {r} (needs r > 0)")));
        }
        Ok(self.value(r))
    }

    /// Unchecked evaluation for `r > 0`.
    #[inline]
    pub fn value(&self, r: f64) -> f64 {
        let mut v = 0.0;
        for t in &self.power_terms {
            v += t.coefficient * pow(r, t.exponent);
        }
        if self.log_coefficient != 0.0 {
            v += self.log_coefficient * r.ln();
        }
        v
    }

    /// `dV/dr` for `r > 0`.
    pub fn derivative(&self, r: f64) -> f64 {
        let mut d = 0.0;
        for t in &self.power_terms {
            d += t.coefficient * t.exponent * pow(r, t.exponent - 1.0);
        }
        d + self.log_coefficient / r
    }

    /// Coefficient of the `1/r` term, which fixes the small-`r` series of the
    /// regular solution.
    pub(crate) fn coulomb_coefficient(&self) -> f64 {
        self.power_terms
            .iter()
            .filter(|t| t.exponent == -1.0)
            .map(|t| t.coefficient)
            .sum()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            power_terms: self
                .power_terms
                .iter()
                .map(|t| PowerTerm {
                    coefficient: t.coefficient * factor,
                    exponent: t.exponent,
                })
                .collect(),
            log_coefficient: self.log_coefficient * factor,
        }
    }

    pub fn asymptote(&self) -> Asymptote {
        let leading = self
            .power_terms
            .iter()
            .filter(|t| t.coefficient != 0.0 && t.exponent > 0.0)
            .max_by(|a, b| a.exponent.total_cmp(&b.exponent));
        if let Some(t) = leading {
            // Terms with equal leading exponent add up.
            let c: f64 = self
                .power_terms
                .iter()
                .filter(|s| s.exponent == t.exponent)
                .map(|s| s.coefficient)
                .sum();
            if c > 0.0 {
                return Asymptote::PlusInfinity;
            } else if c < 0.0 {
                return Asymptote::MinusInfinity;
            }
        }
        if self.log_coefficient > 0.0 {
            Asymptote::PlusInfinity
        } else if self.log_coefficient < 0.0 {
            Asymptote::MinusInfinity
        } else {
            Asymptote::Finite(0.0)
        }
    }

    /// Largest exponent present, with the log term counted as `q = 0`.
    pub(crate) fn leading_exponent(&self) -> f64 {
        let mut q = f64::NEG_INFINITY;
        for t in self.power_terms.iter().filter(|t| t.coefficient != 0.0) {
            q = q.max(t.exponent);
        }
        if self.log_coefficient != 0.0 {
            q = q.max(0.0);
        }
        q
    }
}

#[inline]
fn pow(r: f64, q: f64) -> f64 {
    if q == -1.0 {
        1.0 / r
    } else if q == 1.0 {
        r
    } else if q == 2.0 {
        r * r
    } else if q == 0.5 {
        r.sqrt()
    } else {
        r.powf(q)
    }
}

impl fmt::Display for RadialPotential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for t in &self.power_terms {
            parts.push(format!("pow:{} * {}", t.exponent, t.coefficient));
        }
        if self.log_coefficient != 0.0 {
            parts.push(format!("log * {}", self.log_coefficient));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Split on `+`, except where it is the sign of an exponent as in `1e+3`.
fn split_terms(s: &str) -> Vec<&str> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut start = 0;
    for (i, &c) in bytes.iter().enumerate() {
        if c == b'+' {
            let exp_sign = i >= 2
                && matches!(bytes[i - 1], b'e' | b'E')
                && (bytes[i - 2].is_ascii_digit() || bytes[i - 2] == b'.');
            if !exp_sign {
                out.push(&s[start..i]);
                start = i + 1;
            }
        }
    }
    out.push(&s[start..]);
    out
}

impl FromStr for RadialPotential {
    type Err = Error;

    /// Grammar: `pow:<q> [* coeff]` or `log [* coeff]`, joined by `+`.
    /// A bare `pow:<q>` carries the coefficient `sgn(q)`.
    fn from_str(spec: &str) -> Result<Self> {
        let compact: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
        let fail = |reason: String| Error::Parse {
            spec: spec.to_string(),
            reason,
        };
        if compact.is_empty() {
            return Err(fail("empty spec".into()));
        }
        let mut terms = Vec::new();
        let mut log_coefficient = 0.0;
        for term in split_terms(&compact) {
            if term.is_empty() {
                return Err(fail("empty term".into()));
            }
            let (head, coeff) = match term.split_once('*') {
                Some((h, c)) => {
                    let c: f64 = c
                        .parse()
                        .map_err(|_| fail(format!("bad coefficient `{c}`")))?;
                    (h, Some(c))
                }
                None => (term, None),
            };
            if head == "log" {
                log_coefficient += coeff.unwrap_or(1.0);
            } else if let Some(q) = head.strip_prefix("pow:") {
                let q: f64 = q.parse().map_err(|_| fail(format!("bad exponent `{q}`")))?;
                check_exponent(q).map_err(|e| fail(e.to_string()))?;
                terms.push(PowerTerm {
                    coefficient: coeff.unwrap_or(q.signum()),
                    exponent: q,
                });
            } else {
                return Err(fail(format!("unknown term `{head}`")));
            }
        }
        RadialPotential::new(terms, log_coefficient).map_err(|e| fail(e.to_string()))
    }
}
