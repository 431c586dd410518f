//! Prime sums and Euler products with tail control.
//!
//! The generating Dirichlet series is
//! `𝒢(s) = (6/π²) ∏_p (1 + 1/((p+1)(p^s − 1)))`, convergent for `Re s > 0`,
//! with `g = log 𝒢`,
//! `g′(s) = −Σ_p p^s log p / ((p^s−1)(1 + (p+1)(p^s−1)))` and `g″` by
//! termwise differentiation. All terms are evaluated through
//! `iq = exp(−σ log p)` and `em1 = −expm1(−σ log p) = 1 − iq`, which stays
//! accurate for σ log p anywhere between 1e−7 and overflow.

use super::{Analytic, Eval, TailMode, SIX_OVER_PI2};
use crate::kahan::KahanSum;
use crate::{Error, Result, ThetaRational};

/// Fraction of a tail correction kept as uncertainty, covering the
/// fluctuation of the prime counts around t/log t. Empirically the
/// fluctuation error is 1e−3..1e−2 of the correction at P ≥ 1e4; 0.02
/// leaves a comfortable margin while staying far below the correction
/// itself.
const PNT_UNCERTAINTY_FRACTION: f64 = 0.02;

/// π(t) ≤ 1.3 t / log t over the supported range; used for bounded-mode
/// envelopes.
const PI_ENVELOPE: f64 = 1.3;

/// Maximum unit panels for the tail quadrature (each covers a factor e in t).
const MAX_PANELS: usize = 30_000;

/// Subintervals of the composite Simpson rule per unit panel.
const SIMPSON_STEPS: usize = 32;

/// `∫_P^∞ f(t)/log t dt`, the prime-density continuation of `Σ_{p>P} f(p)`,
/// by substitution `t = P e^u` and per-unit composite Simpson panels.
/// Returns the integral and a residue estimate for the stopped geometric
/// remainder.
pub fn prime_density_integral(p_limit: f64, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let ln_p = p_limit.ln();
    let integrand = |u: f64| {
        let t = p_limit * u.exp();
        if !t.is_finite() {
            return 0.0;
        }
        let v = f(t);
        if v == 0.0 {
            0.0
        } else {
            v * t / (ln_p + u)
        }
    };

    let mut total = KahanSum::new();
    let mut prev_panel = 0.0f64;
    let mut panel = 0.0f64;
    let mut exhausted = false;
    for k in 0..MAX_PANELS {
        let base = k as f64;
        prev_panel = panel;
        panel = simpson_panel(&integrand, base, base + 1.0, SIMPSON_STEPS);
        total.add(panel);
        if panel.abs() < total.value().abs() * 5e-17 + 1e-300 {
            exhausted = true;
            break;
        }
    }
    let mut residue = 0.0;
    if !exhausted && panel != 0.0 {
        // geometric extrapolation of the remaining panels
        let ratio = if prev_panel != 0.0 {
            (panel / prev_panel).abs().min(0.999)
        } else {
            0.5
        };
        residue = panel.abs() * ratio / (1.0 - ratio);
    }
    (total.value(), residue)
}

/// Composite Simpson rule on [a, b] with `n` (even) subintervals.
fn simpson_panel(f: &impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    debug_assert!(n % 2 == 0);
    let h = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + i as f64 * h);
    }
    acc * h / 3.0
}

/// Outcome of a truncated prime sum: partial value, smooth tail correction,
/// and uncertainty components.
pub(crate) struct PrimeSum {
    pub partial: f64,
    pub correction: f64,
    pub quad_residue: f64,
    /// |f(P)| scale for bounded-mode envelopes.
    pub f_at_p: f64,
}

impl Analytic {
    /// Σ_{p ≤ P} term(p) with tail data for the continuation `term(t)`.
    pub(crate) fn prime_sum(
        &self,
        term: impl Fn(f64, f64) -> f64, // (p, ln p) -> value
        cont: impl Fn(f64) -> f64,      // t -> value, t real > P
    ) -> PrimeSum {
        let mut acc = KahanSum::new();
        for (i, &p) in self.primes.iter().enumerate() {
            acc.add(term(p as f64, self.ln_primes[i]));
        }
        let p_f = self.cfg.prime_limit as f64;
        let (correction, quad_residue) = prime_density_integral(p_f, &cont);
        PrimeSum {
            partial: acc.value(),
            correction,
            quad_residue,
            f_at_p: cont(p_f).abs(),
        }
    }

    /// Package a prime sum per the configured tail mode.
    pub(crate) fn finish(&self, sum: PrimeSum, what: &str) -> Result<Eval> {
        let p_f = self.cfg.prime_limit as f64;
        let ln_p = p_f.ln();
        match self.cfg.tail_mode {
            TailMode::Extrapolated => {
                let tail = PNT_UNCERTAINTY_FRACTION * sum.correction.abs()
                    + sum.quad_residue
                    + 8.0 * f64::EPSILON * (sum.partial.abs() + sum.correction.abs());
                Ok(Eval {
                    value: sum.partial + sum.correction,
                    tail,
                })
            }
            TailMode::Bounded => {
                let tail = PI_ENVELOPE * (sum.correction.abs() + sum.f_at_p * p_f / ln_p)
                    + sum.f_at_p * p_f / ln_p
                    + sum.quad_residue;
                if tail > self.cfg.tol {
                    return Err(Error::PrecisionUnreachable {
                        tail,
                        tol: self.cfg.tol,
                        hint: format!("increase prime_limit for {what}"),
                    });
                }
                Ok(Eval {
                    value: sum.partial,
                    tail,
                })
            }
        }
    }

    /// `log 𝒢(σ)` with tail estimate.
    ///
    /// The partial value is `log(6/π²) + Σ_{p≤P} log(1 + 1/((p+1)(p^σ−1)))`.
    pub fn log_g(&self, sigma: f64) -> Result<Eval> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "log_g requires sigma > 0, got {sigma}"
            )));
        }
        let factor = move |t: f64, ln_t: f64| -> f64 {
            let iq = (-sigma * ln_t).exp();
            let em1 = -(-sigma * ln_t).exp_m1(); // 1 - p^{-sigma}
            (iq / ((t + 1.0) * em1)).ln_1p()
        };
        let sum = self.prime_sum(
            |p, lp| factor(p, lp),
            |t| factor(t, t.ln()),
        );
        let mut eval = self.finish(sum, "log_g")?;
        eval.value += SIX_OVER_PI2.ln();
        Ok(eval)
    }

    /// `(g′(σ), g″(σ))`, each with its tail estimate.
    ///
    /// `g′ < 0` and `g″ > 0` throughout `σ > 0`; both are needed by the
    /// saddle solver at every Newton step, so they share one pass over the
    /// prime table.
    pub fn g_derivatives(&self, sigma: f64) -> Result<(Eval, Eval)> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "g_derivatives requires sigma > 0, got {sigma}"
            )));
        }
        // positive magnitudes; g' = -sum of t1
        let t1 = move |t: f64, ln_t: f64| -> f64 {
            let iq = (-sigma * ln_t).exp();
            let em1 = -(-sigma * ln_t).exp_m1();
            let b = iq + (t + 1.0) * em1;
            ln_t * iq / (em1 * b)
        };
        let t2 = move |t: f64, ln_t: f64| -> f64 {
            let iq = (-sigma * ln_t).exp();
            let em1 = -(-sigma * ln_t).exp_m1();
            let b = iq + (t + 1.0) * em1;
            let c = iq * iq + (t + 1.0) * em1 * (1.0 + iq);
            ln_t * ln_t * iq * c / (em1 * em1 * b * b)
        };

        let mut acc1 = KahanSum::new();
        let mut acc2 = KahanSum::new();
        for (i, &p) in self.primes.iter().enumerate() {
            let (pf, lp) = (p as f64, self.ln_primes[i]);
            acc1.add(t1(pf, lp));
            acc2.add(t2(pf, lp));
        }
        let p_f = self.cfg.prime_limit as f64;
        let (c1, r1) = prime_density_integral(p_f, |t| t1(t, t.ln()));
        let (c2, r2) = prime_density_integral(p_f, |t| t2(t, t.ln()));

        let g1 = self.finish(
            PrimeSum {
                partial: acc1.value(),
                correction: c1,
                quad_residue: r1,
                f_at_p: t1(p_f, p_f.ln()).abs(),
            },
            "g_derivatives",
        )?;
        let g2 = self.finish(
            PrimeSum {
                partial: acc2.value(),
                correction: c2,
                quad_residue: r2,
                f_at_p: t2(p_f, p_f.ln()).abs(),
            },
            "g_derivatives",
        )?;
        Ok((
            Eval {
                value: -g1.value,
                tail: g1.tail,
            },
            g2,
        ))
    }

    /// Rankin upper bound `S_θ(x) ≤ x^{θ+ε} ∏_p (1 + 1/(p(p^ε − 1)))`.
    ///
    /// The product is evaluated in logarithm; the tail correction *and* its
    /// uncertainty envelope are added to the exponent so the returned value
    /// stays an upper bound for the exact count.
    pub fn rankin_bound(&self, theta: ThetaRational, x: f64, eps: f64) -> Result<Eval> {
        if !(eps > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rankin_bound requires eps > 0, got {eps}"
            )));
        }
        if !(x >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "rankin_bound requires x >= 1, got {x}"
            )));
        }
        let factor = move |t: f64, ln_t: f64| -> f64 {
            let em1 = -(-eps * ln_t).exp_m1(); // 1 - t^{-eps}
            let iq = (-eps * ln_t).exp();
            // 1/(t (t^eps - 1)) = iq / (t em1)
            (iq / (t * em1)).ln_1p()
        };
        let sum = self.prime_sum(|p, lp| factor(p, lp), |t| factor(t, t.ln()));
        let log_prod = self.finish(sum, "rankin_bound")?;
        let exponent =
            (theta.value() + eps) * x.ln() + log_prod.value + log_prod.tail;
        if exponent > 706.0 {
            return Err(Error::Overflow(format!(
                "rankin bound overflows f64 (log = {exponent:.3e}); increase eps"
            )));
        }
        let value = exponent.exp();
        Ok(Eval {
            value,
            tail: value * 2.0 * log_prod.tail,
        })
    }
}

/// Result of the error-series evaluation at the canonical parameter choice.
#[derive(Debug, Clone, Copy)]
pub struct EBoundResult {
    /// E = y^{1−γ} (x/y)^σ ∏_p (1 + p^γ (1 + 4γ p^{−1/2}) / (p (p^σ − 1))).
    pub value: f64,
    /// Diagnostic ratio E / (x^θ F(v)).
    pub ratio_to_main: f64,
    pub sigma: f64,
    pub gamma: f64,
    pub tail: f64,
}

impl Analytic {
    /// The error series `E` at the canonical parameters
    /// `y = x^θ`, `v = (1−θ) log x`, `σ = σ_v`, `γ = σ_v − 1/log y`.
    pub fn e_bound(&self, theta: ThetaRational, x: f64) -> Result<EBoundResult> {
        if !(x >= 27.0) {
            return Err(Error::InvalidArgument(format!(
                "e_bound requires x >= 27, got {x}"
            )));
        }
        let th = theta.value();
        let ln_x = x.ln();
        let ln_y = th * ln_x;
        let v = (1.0 - th) * ln_x;
        let saddle = self.solve_saddle(v)?;
        let sigma = saddle.sigma;
        let gamma = sigma - 1.0 / ln_y;
        if gamma <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "e_bound parameter degeneracy: gamma = {gamma:.3e} <= 0 (x too small for theta = {theta})"
            )));
        }

        let factor = move |t: f64, ln_t: f64| -> f64 {
            let em1_s = -(-sigma * ln_t).exp_m1(); // 1 - t^{-sigma}
            let iq_s = (-sigma * ln_t).exp();
            let t_gamma = (gamma * ln_t).exp();
            let r = 1.0 + 4.0 * gamma / t.sqrt();
            // p^gamma r / (p (p^sigma - 1)) = t^gamma r iq_s / (t em1_s)
            (t_gamma * r * iq_s / (t * em1_s)).ln_1p()
        };
        let sum = self.prime_sum(|p, lp| factor(p, lp), |t| factor(t, t.ln()));
        let log_prod = self.finish(sum, "e_bound")?;

        let log_e = (1.0 - gamma) * ln_y + sigma * v + log_prod.value;
        if log_e > 706.0 {
            return Err(Error::Overflow(format!(
                "error series overflows f64 (log = {log_e:.3e})"
            )));
        }
        let value = log_e.exp();
        let f_v = self.f_series(v)?;
        let main = (th * ln_x).exp() * f_v.value;
        Ok(EBoundResult {
            value,
            ratio_to_main: value / main,
            sigma,
            gamma,
            tail: value * 2.0 * log_prod.tail,
        })
    }
}
