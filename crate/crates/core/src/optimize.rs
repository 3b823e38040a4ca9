//! One-dimensional minimization and root finding.
//!
//! Minimization is golden-section with parabolic acceleration (Brent); roots
//! use Brent's bracketing method. Positive variables such as radii and
//! kinetic energies are searched in logarithmic coordinates.

use crate::error::{Error, Result};

const GOLD: f64 = 1.618_033_988_749_895;
const CGOLD: f64 = 0.381_966_011_250_105_1;
const ZEPS: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
}

/// A downhill triple `a < b < c` (or reversed) with `f(b) <= min(f(a), f(c))`.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub fb: f64,
}

fn finite(v: f64, x: f64) -> Result<f64> {
    if v.is_nan() {
        Err(Error::Minimization(format!("objective is NaN at {x}")))
    } else {
        Ok(v)
    }
}

/// Walks downhill from `x0` in steps growing by the golden ratio until the
/// objective turns up again.
pub fn bracket_minimum<F: FnMut(f64) -> f64>(
    f: &mut F,
    x0: f64,
    step: f64,
    max_expansions: usize,
) -> Result<Bracket> {
    let (mut a, mut b) = (x0, x0 + step);
    let mut fa = finite(f(a), a)?;
    let mut fb = finite(f(b), b)?;
    if fb > fa {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut fa, &mut fb);
    }
    let mut c = b + GOLD * (b - a);
    let mut fc = finite(f(c), c)?;
    let mut n = 0;
    while fc <= fb {
        if n >= max_expansions || !c.is_finite() || fc == f64::NEG_INFINITY {
            return Err(Error::Minimization(format!(
                "no minimum bracketed from {x0}: objective keeps decreasing (last x = {c}, f = {fc})"
            )));
        }
        a = b;
        b = c;
        fb = fc;
        c = b + GOLD * (b - a);
        fc = finite(f(c), c)?;
        n += 1;
    }
    Ok(Bracket { a, b, c, fb })
}

/// Brent's minimizer on a bracket, converging once `x` is known to within
/// `rel_tol * |x| + abs_tol`.
pub fn brent_minimize<F: FnMut(f64) -> f64>(
    f: &mut F,
    bracket: Bracket,
    rel_tol: f64,
    abs_tol: f64,
    max_iter: usize,
) -> Result<Minimum> {
    let mut a = bracket.a.min(bracket.c);
    let mut b = bracket.a.max(bracket.c);
    let (mut x, mut w, mut v) = (bracket.b, bracket.b, bracket.b);
    let (mut fx, mut fw, mut fv) = (bracket.fb, bracket.fb, bracket.fb);
    let mut d: f64 = 0.0;
    let mut e: f64 = 0.0;
    for _ in 0..max_iter {
        let xm = 0.5 * (a + b);
        let tol1 = rel_tol * x.abs() + abs_tol + ZEPS;
        let tol2 = 2.0 * tol1;
        if (x - xm).abs() <= tol2 - 0.5 * (b - a) {
            return Ok(Minimum { x, value: fx });
        }
        if e.abs() > tol1 {
            let r = (x - w) * (fx - fv);
            let mut q = (x - v) * (fx - fw);
            let mut p = (x - v) * q - (x - w) * r;
            q = 2.0 * (q - r);
            if q > 0.0 {
                p = -p;
            }
            q = q.abs();
            let etemp = e;
            e = d;
            if p.abs() >= (0.5 * q * etemp).abs() || p <= q * (a - x) || p >= q * (b - x) {
                e = if x >= xm { a - x } else { b - x };
                d = CGOLD * e;
            } else {
                d = p / q;
                let u = x + d;
                if u - a < tol2 || b - u < tol2 {
                    d = tol1.copysign(xm - x);
                }
            }
        } else {
            e = if x >= xm { a - x } else { b - x };
            d = CGOLD * e;
        }
        let u = if d.abs() >= tol1 { x + d } else { x + tol1.copysign(d) };
        let fu = finite(f(u), u)?;
        if fu <= fx {
            if u >= x {
                a = x;
            } else {
                b = x;
            }
            v = w;
            w = x;
            x = u;
            fv = fw;
            fw = fx;
            fx = fu;
        } else {
            if u < x {
                a = u;
            } else {
                b = u;
            }
            if fu <= fw || w == x {
                v = w;
                w = u;
                fv = fw;
                fw = fu;
            } else if fu <= fv || v == x || v == w {
                v = u;
                fv = fu;
            }
        }
    }
    Err(Error::Minimization(format!(
        "no convergence after {max_iter} iterations, bracket [{a}, {b}]"
    )))
}

/// Minimizes `f` over `x > 0`, searching in `ln x` from `guess`.
pub fn minimize_positive<F: FnMut(f64) -> f64>(mut f: F, guess: f64) -> Result<Minimum> {
    if !(guess > 0.0) {
        return Err(Error::domain("starting point must be positive"));
    }
    let mut g = |y: f64| f(y.exp());
    let br = bracket_minimum(&mut g, guess.ln(), 0.1, 200)?;
    // The objective is quadratic at the minimum, so 1e-10 in ln x resolves
    // its value to machine precision.
    let m = brent_minimize(&mut g, br, 0.0, 1e-10, 500)?;
    Ok(Minimum {
        x: m.x.exp(),
        value: m.value,
    })
}

/// Maximizes `f` over `x > 0`.
pub fn maximize_positive<F: FnMut(f64) -> f64>(mut f: F, guess: f64) -> Result<Minimum> {
    let m = minimize_positive(|x| -f(x), guess)?;
    Ok(Minimum {
        x: m.x,
        value: -m.value,
    })
}

/// Minimizes `f` on the closed interval `[lo, hi]` after a coarse scan of
/// `samples` points, so multi-modal tails do not trap the search.
pub fn minimize_on_interval<F: FnMut(f64) -> f64>(
    mut f: F,
    lo: f64,
    hi: f64,
    samples: usize,
) -> Result<Minimum> {
    let samples = samples.max(3);
    let step = (hi - lo) / (samples - 1) as f64;
    let mut best = (0usize, f64::INFINITY);
    let mut values = Vec::with_capacity(samples);
    for i in 0..samples {
        let x = lo + step * i as f64;
        let v = finite(f(x), x)?;
        values.push(v);
        if v < best.1 {
            best = (i, v);
        }
    }
    let i = best.0;
    if i == 0 || i == samples - 1 {
        let x = lo + step * i as f64;
        return Ok(Minimum { x, value: best.1 });
    }
    let bracket = Bracket {
        a: lo + step * (i - 1) as f64,
        b: lo + step * i as f64,
        c: lo + step * (i + 1) as f64,
        fb: values[i],
    };
    brent_minimize(&mut f, bracket, 1e-10, 1e-12 * (hi - lo).abs(), 500)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    /// Final bracket, ordered `lo <= hi`.
    pub lo: f64,
    pub hi: f64,
    pub converged: bool,
}

/// Brent's root finder. `fa` and `fb` are the values at the ends and must
/// differ in sign. Stops once the bracket is narrower than
/// `rel_tol * |x| + abs_tol`.
#[allow(clippy::too_many_arguments)]
pub fn brent_root<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    lo: f64,
    hi: f64,
    flo: f64,
    fhi: f64,
    rel_tol: f64,
    abs_tol: f64,
    max_iter: usize,
) -> Result<Root> {
    if flo * fhi > 0.0 {
        return Err(Error::domain(format!("root not bracketed by [{lo}, {hi}]")));
    }
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, flo, fhi);
    let (mut c, mut fc) = (b, fb);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if (fb > 0.0 && fc > 0.0) || (fb < 0.0 && fc < 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * (rel_tol * b.abs() + abs_tol);
        let xm = 0.5 * (c - b);
        if fb == 0.0 {
            return Ok(Root {
                x: b,
                lo: b,
                hi: b,
                converged: true,
            });
        }
        if xm.abs() <= tol1 {
            return Ok(Root {
                x: b,
                lo: b.min(c),
                hi: b.max(c),
                converged: true,
            });
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b)?;
    }
    Ok(Root {
        x: b,
        lo: b.min(c),
        hi: b.max(c),
        converged: false,
    })
}
