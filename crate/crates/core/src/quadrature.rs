//! Composite Simpson quadrature with grid doubling.

use crate::error::{Error, Result};
use crate::math::fabs;

/// Composite Simpson rule, refined by doubling the interval count until two
/// successive estimates agree to `rel_tol` relative to the latest one.
///
/// Reaching `max_intervals` is accepted when the last change is within
/// `accept_at_cap` (also relative); otherwise the rule reports
/// [`Error::QuadratureNotConverged`]. Any non-finite integrand value is
/// reported as [`Error::DivergentIntegral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Simpson {
    pub initial_intervals: usize,
    pub max_intervals: usize,
    pub rel_tol: f64,
    pub accept_at_cap: f64,
}

impl Default for Simpson {
    fn default() -> Self {
        Simpson {
            initial_intervals: 64,
            max_intervals: 1 << 20,
            rel_tol: 1e-10,
            accept_at_cap: 1e-4,
        }
    }
}

impl Simpson {
    pub fn with_initial_intervals(mut self, intervals: usize) -> Self {
        let even = intervals.max(2).next_power_of_two();
        self.initial_intervals = even.min(self.max_intervals);
        self
    }

    pub fn integrate<F>(&self, mut f: F, a: f64, b: f64) -> Result<f64>
    where
        F: FnMut(f64) -> f64,
    {
        if a == b {
            return Ok(0.0);
        }
        let mut eval = |x: f64| -> Result<f64> {
            let y = f(x);
            if y.is_finite() {
                Ok(y)
            } else {
                Err(Error::DivergentIntegral)
            }
        };

        let mut n = self.initial_intervals.max(2);
        if n % 2 == 1 {
            n += 1;
        }
        let width = b - a;
        let ends = eval(a)? + eval(b)?;
        let mut odd = 0.0;
        let mut even = 0.0;
        for k in 1..n {
            let x = a + width * (k as f64) / (n as f64);
            if k % 2 == 1 {
                odd += eval(x)?;
            } else {
                even += eval(x)?;
            }
        }
        let mut current = width / (3.0 * n as f64) * (ends + 4.0 * odd + 2.0 * even);

        loop {
            let next_n = 2 * n;
            even += odd;
            odd = 0.0;
            for k in (1..next_n).step_by(2) {
                odd += eval(a + width * (k as f64) / (next_n as f64))?;
            }
            let next = width / (3.0 * next_n as f64) * (ends + 4.0 * odd + 2.0 * even);
            let change = fabs(next - current);
            let scale = fabs(next);
            let rel = if scale > 0.0 { change / scale } else { change };
            n = next_n;
            current = next;
            if rel <= self.rel_tol {
                return Ok(current);
            }
            if n >= self.max_intervals {
                if rel <= self.accept_at_cap {
                    return Ok(current);
                }
                return Err(Error::QuadratureNotConverged {
                    intervals: n,
                    last_change: rel,
                });
            }
        }
    }
}
