//! Fixed-step fourth-order Runge-Kutta for scalar initial value problems,
//! with step doubling until the Richardson error estimate meets a tolerance.

use crate::error::{Error, Result};

const INITIAL_STEPS: usize = 16;
const MAX_STEPS: usize = 1 << 22;

/// Integrates `dy/dx = f(x, y)` from `(x0, y0)` to `x1` with `steps` equal
/// RK4 steps.
pub fn rk4<F>(f: F, x0: f64, y0: f64, x1: f64, steps: usize) -> f64
where
    F: Fn(f64, f64) -> f64,
{
    let h = (x1 - x0) / steps as f64;
    let mut y = y0;
    for i in 0..steps {
        let x = x0 + i as f64 * h;
        let k1 = f(x, y);
        let k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
        let k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
        let k4 = f(x + h, y + h * k3);
        y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    y
}

/// Outcome of a converged integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Converged {
    /// Richardson-extrapolated end value.
    pub value: f64,
    /// Step count of the finer of the last two solutions.
    pub steps: usize,
    /// Relative error estimate at acceptance.
    pub rel_error: f64,
}

/// Repeatedly halves the RK4 step until `|y_2n - y_n| / 15` falls below
/// `rel_tol * |y_2n|`.
pub fn rk4_converged<F>(f: F, x0: f64, y0: f64, x1: f64, rel_tol: f64) -> Result<Converged>
where
    F: Fn(f64, f64) -> f64,
{
    let mut steps = INITIAL_STEPS;
    let mut coarse = rk4(&f, x0, y0, x1, steps);
    let mut rel_error = f64::INFINITY;
    while steps < MAX_STEPS {
        steps *= 2;
        let fine = rk4(&f, x0, y0, x1, steps);
        let correction = (fine - coarse) / 15.0;
        let scale = fine.abs();
        rel_error = if scale > 0.0 {
            correction.abs() / scale
        } else if correction == 0.0 {
            0.0
        } else {
            f64::INFINITY
        };
        if rel_error <= rel_tol {
            return Ok(Converged {
                value: fine + correction,
                steps,
                rel_error,
            });
        }
        coarse = fine;
    }
    Err(Error::NonConvergence {
        achieved: rel_error,
        requested: rel_tol,
    })
}
