//! Adaptive Dormand–Prince 5(4) integration of a scalar ODE `y' = f(x, y)`.

use crate::error::{Error, Result};

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const A71: f64 = 35.0 / 384.0;
const A73: f64 = 500.0 / 1113.0;
const A74: f64 = 125.0 / 192.0;
const A75: f64 = -2187.0 / 6784.0;
const A76: f64 = 11.0 / 84.0;

// Fifth-order weights minus embedded fourth-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

#[derive(Debug, Clone, Copy)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    /// Largest allowed step magnitude.
    pub h_max: f64,
    pub max_steps: usize,
}

impl Dopri5 {
    pub fn new(tol: f64, h_max: f64) -> Self {
        Self {
            rtol: tol,
            atol: tol,
            h_max,
            max_steps: 1_000_000,
        }
    }

    /// Integrates from `(x0, y0)` to `x1`; `x1 < x0` integrates backwards.
    pub fn integrate<F: FnMut(f64, f64) -> f64>(
        &self,
        mut f: F,
        x0: f64,
        y0: f64,
        x1: f64,
    ) -> Result<f64> {
        let span = x1 - x0;
        if span == 0.0 {
            return Ok(y0);
        }
        let dir = span.signum();
        let h_max = self.h_max.min(span.abs());
        let mut x = x0;
        let mut y = y0;
        let mut k1 = f(x, y);
        let mut h = initial_step(k1, y, self.rtol, self.atol).min(h_max) * dir;
        let mut steps = 0usize;
        let mut rejected_last = false;
        while (x1 - x) * dir > 0.0 {
            steps += 1;
            if steps > self.max_steps {
                return Err(Error::Integration(format!(
                    "step budget exhausted at x = {x} (target {x1})"
                )));
            }
            if (x + h - x1) * dir > 0.0 {
                h = x1 - x;
            }
            let k2 = f(x + C2 * h, y + h * A21 * k1);
            let k3 = f(x + C3 * h, y + h * (A31 * k1 + A32 * k2));
            let k4 = f(x + C4 * h, y + h * (A41 * k1 + A42 * k2 + A43 * k3));
            let k5 = f(
                x + C5 * h,
                y + h * (A51 * k1 + A52 * k2 + A53 * k3 + A54 * k4),
            );
            let k6 = f(
                x + h,
                y + h * (A61 * k1 + A62 * k2 + A63 * k3 + A64 * k4 + A65 * k5),
            );
            let y_new = y + h * (A71 * k1 + A73 * k3 + A74 * k4 + A75 * k5 + A76 * k6);
            let k7 = f(x + h, y_new);
            let err = h * (E1 * k1 + E3 * k3 + E4 * k4 + E5 * k5 + E6 * k6 + E7 * k7);
            let scale = self.atol + self.rtol * y.abs().max(y_new.abs());
            let ratio = (err / scale).abs();
            if !ratio.is_finite() {
                return Err(Error::Integration(format!("non-finite derivative near x = {x}")));
            }
            if ratio <= 1.0 {
                x += h;
                y = y_new;
                k1 = k7;
                let grow = if ratio == 0.0 {
                    5.0
                } else {
                    (0.9 * ratio.powf(-0.2)).clamp(0.2, 5.0)
                };
                let grow = if rejected_last { grow.min(1.0) } else { grow };
                h = (h * grow).abs().min(h_max) * dir;
                rejected_last = false;
            } else {
                h *= (0.9 * ratio.powf(-0.2)).max(0.1);
                rejected_last = true;
                if (x + h) == x {
                    return Err(Error::Integration(format!("step size underflow at x = {x}")));
                }
            }
        }
        Ok(y)
    }
}

fn initial_step(dy: f64, y: f64, rtol: f64, atol: f64) -> f64 {
    let scale = atol + rtol * y.abs();
    let d = dy.abs() / scale;
    if d < 1e-10 {
        1e-3
    } else {
        (0.01 / d).powf(0.2).max(1e-8) * 1e-2
    }
}
