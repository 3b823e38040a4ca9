//! Reference values computed without the library's solvers.
#![allow(dead_code)]

use pspectrum::QuantumNumbers;

pub fn qn(n: u32, l: u32) -> QuantumNumbers {
    QuantumNumbers::new(n, l).unwrap()
}

const AI0: f64 = 0.355_028_053_887_817_2;
const AIP0: f64 = 0.258_819_403_792_806_8;

/// `Ai(x)` from its Maclaurin series; adequate for `|x| ≤ 10`.
pub fn airy_ai(x: f64) -> f64 {
    let x3 = x * x * x;
    let (mut f, mut g) = (1.0, x);
    let (mut tf, mut tg) = (1.0, x);
    for k in 1..200 {
        let k = k as f64;
        tf *= x3 / ((3.0 * k - 1.0) * 3.0 * k);
        tg *= x3 / (3.0 * k * (3.0 * k + 1.0));
        f += tf;
        g += tg;
        if tf.abs() + tg.abs() < 1e-30 {
            break;
        }
    }
    AI0 * f - AIP0 * g
}

/// Magnitudes of the first `count` zeros of `Ai`, by scanning and bisection.
pub fn airy_zero_magnitudes(count: usize) -> Vec<f64> {
    let mut zeros = Vec::new();
    let step = 0.01;
    let mut x = 0.0;
    let mut fx = airy_ai(x);
    while zeros.len() < count {
        let y = x - step;
        let fy = airy_ai(y);
        if fx * fy <= 0.0 {
            let (mut hi, mut lo) = (x, y);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if airy_ai(mid) * airy_ai(lo) <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            zeros.push(-0.5 * (lo + hi));
        }
        x = y;
        fx = fy;
    }
    zeros
}

/// Composite Simpson rule on `[a, b]` with `2m` panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

/// `⟨-Δ - a/r + b r⟩` in `ψ = exp(-r²/(2σ²))`, every moment by quadrature.
pub fn gaussian_energy(a: f64, b: f64, sigma: f64) -> f64 {
    let psi = |r: f64| (-r * r / (2.0 * sigma * sigma)).exp();
    let dpsi = |r: f64| -r / (sigma * sigma) * psi(r);
    let top = 14.0 * sigma;
    let m = 4000;
    let norm = simpson(|r| r * r * psi(r).powi(2), 0.0, top, m);
    let kinetic = simpson(|r| r * r * dpsi(r).powi(2), 0.0, top, m);
    let inv_r = simpson(|r| r * psi(r).powi(2), 0.0, top, m);
    let lin = simpson(|r| r.powi(3) * psi(r).powi(2), 0.0, top, m);
    (kinetic - a * inv_r + b * lin) / norm
}

/// Golden-section minimum of a unimodal `f` on `[lo, hi]`.
pub fn golden_min(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > 1e-9 * (lo.abs() + hi.abs()) {
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Best Gaussian trial energy for `-Δ - a/r + b r`.
pub fn gaussian_variational(a: f64, b: f64) -> f64 {
    golden_min(|s| gaussian_energy(a, b, s), 0.05, 20.0).1
}

/// `|a - b| / |b|`.
pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
