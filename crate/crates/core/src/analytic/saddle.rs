//! The saddle point: for `v > 0` the unique `σ_v > 0` with
//! `g′(σ_v) + v = 0`. Uniqueness comes from `g′` being increasing on
//! `(0, ∞)` with range `(−∞, 0)`.

use super::Analytic;
use crate::{Error, Result};

/// A solved saddle point.
#[derive(Debug, Clone, Copy)]
pub struct SaddlePoint {
    pub v: f64,
    pub sigma: f64,
    /// `g′(sigma) + v` at the returned point, |residual| ≤ tol.
    pub residual: f64,
    /// `g″(sigma)` (positive).
    pub g2: f64,
}

const MAX_ITERATIONS: usize = 200;

impl Analytic {
    /// Solve `g′(σ) + v = 0` by bracketing plus Newton refinement.
    ///
    /// A bisection bracket starting from `[1e−6, 10]` guards the Newton
    /// steps (`g′` is monotone, so any sign-changing bracket shrinks
    /// monotonically); the asymptotic shape `σ ≈ √(2/(v log v))` seeds the
    /// iteration. Deterministic for a fixed configuration.
    pub fn solve_saddle(&self, v: f64) -> Result<SaddlePoint> {
        if !(v > 0.0) || !v.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "solve_saddle requires v > 0, got {v}"
            )));
        }
        let h = |sigma: f64| -> Result<(f64, f64)> {
            let (g1, g2) = self.g_derivatives(sigma)?;
            Ok((g1.value + v, g2.value))
        };

        let mut lo = 1e-6_f64;
        let mut hi = 10.0_f64;
        let (mut h_lo, _) = h(lo)?;
        let (mut h_hi, _) = h(hi)?;
        while h_lo >= 0.0 && lo > 1e-18 {
            lo /= 16.0;
            (h_lo, _) = h(lo)?;
        }
        while h_hi <= 0.0 && hi < 1e12 {
            hi *= 16.0;
            (h_hi, _) = h(hi)?;
        }
        if h_lo >= 0.0 || h_hi <= 0.0 {
            return Err(Error::NonConvergence {
                iterations: 0,
                last: if h_lo >= 0.0 { lo } else { hi },
                residual: if h_lo >= 0.0 { h_lo } else { h_hi },
            });
        }

        let mut sigma = if v > std::f64::consts::E {
            (2.0 / (v * v.ln())).sqrt().clamp(lo * 2.0, hi / 2.0)
        } else {
            0.5 * (lo + hi)
        };

        let mut residual = f64::INFINITY;
        for _ in 0..MAX_ITERATIONS {
            let (hv, g2v) = h(sigma)?;
            residual = hv;
            if hv.abs() <= self.cfg.tol {
                return Ok(SaddlePoint {
                    v,
                    sigma,
                    residual: hv,
                    g2: g2v,
                });
            }
            if hv < 0.0 {
                lo = sigma;
            } else {
                hi = sigma;
            }
            let newton = sigma - hv / g2v;
            sigma = if newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        Err(Error::NonConvergence {
            iterations: MAX_ITERATIONS,
            last: sigma,
            residual,
        })
    }
}
