//! Estimators for the counting functions, assembled from the saddle point
//! and the series `F` and `H`.
//!
//! The main-term estimate is `s7 = x^θ F((1−θ) log x) σ_v / θ` with
//! `v = (1−θ) log x`; substituting `σ_v ≈ √(2/(v log v))` gives the fully
//! explicit `s8 = x^θ F(v) θ^{−1} (2/(1−θ))^{1/2} ((log x) log log x)^{−1/2}`.

use super::Analytic;
use crate::{Error, Result, ThetaRational};

/// Admissible window for local-scaling predictions: |log z| up to this
/// multiple of log log x.
const LOG_Z_SLACK: f64 = 2.0;

/// The estimator bundle at a point (θ, x).
#[derive(Debug, Clone, Copy)]
pub struct EstimateResult {
    /// Main-term estimate `x^θ F(v) σ_v / θ`.
    pub s7: f64,
    /// Explicit variant with the saddle point replaced by its asymptotic.
    pub s8: f64,
    /// The saddle point `σ_v` at `v = (1−θ) log x`.
    pub alpha: f64,
    pub f_v: f64,
    pub h_v: f64,
    /// Exponent excess: `S(x) ≈ x^{θ+β}` with `β = log(s8/x^θ)/log x`.
    pub beta: f64,
}

/// Which predicted ratio `predict_ratio` returns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictMode {
    /// `S_θ(zx)/S_θ(x) ≈ z^θ`.
    Simple,
    /// Refined local scaling `z^{θ+(1−θ)α_θ(x)}`.
    RefinedTheta,
    /// Alternate reading of the refined exponent with `α_0(x) = σ_{log x}`.
    RefinedZero,
    /// `S_{θ,Θ}(x)/S_θ(x) ≈ (log x)^Θ`.
    LogPower,
    /// `B(x,z)/S_θ(x) ≈ z`.
    Linear,
}

impl Analytic {
    /// Main-term and explicit estimates for `S_θ(x)`, `x ≥ 27`.
    pub fn estimate_powered(&self, theta: ThetaRational, x: f64) -> Result<EstimateResult> {
        if !(x >= 27.0) {
            return Err(Error::InvalidArgument(format!(
                "estimate_powered requires x >= 27, got {x}"
            )));
        }
        let th = theta.value();
        let ln_x = x.ln();
        let v = (1.0 - th) * ln_x;
        let saddle = self.solve_saddle(v)?;
        let f_v = self.f_series(v)?.value;
        let h_v = self.h_series(theta, x)?.value;
        let x_theta = (th * ln_x).exp();
        let s7 = x_theta * f_v * saddle.sigma / th;
        let s8 = x_theta * f_v / th * (2.0 / (1.0 - th)).sqrt() / (ln_x * ln_x.ln()).sqrt();
        let beta = (s8 / x_theta).ln() / ln_x;
        Ok(EstimateResult {
            s7,
            s8,
            alpha: saddle.sigma,
            f_v,
            h_v,
            beta,
        })
    }

    /// Predicted multiplicative factor for the requested comparison.
    pub fn predict_ratio(
        &self,
        theta: ThetaRational,
        x: f64,
        z: f64,
        big_theta: f64,
        mode: PredictMode,
    ) -> Result<f64> {
        if !(x >= 1000.0) {
            return Err(Error::InvalidArgument(format!(
                "predict_ratio requires x >= 1000, got {x}"
            )));
        }
        let uses_z = !matches!(mode, PredictMode::LogPower);
        if uses_z {
            if !(z > 0.0) {
                return Err(Error::InvalidArgument(format!("need z > 0, got {z}")));
            }
            let window = LOG_Z_SLACK * x.ln().ln();
            if z.ln().abs() > window {
                return Err(Error::InvalidArgument(format!(
                    "|log z| = {:.3} outside the admissible window {window:.3} at x = {x:.3e}",
                    z.ln().abs()
                )));
            }
        }
        let th = theta.value();
        Ok(match mode {
            PredictMode::Simple => z.powf(th),
            PredictMode::RefinedTheta => {
                let v = (1.0 - th) * x.ln();
                let alpha = self.solve_saddle(v)?.sigma;
                z.powf(th + (1.0 - th) * alpha)
            }
            PredictMode::RefinedZero => {
                let alpha0 = self.solve_saddle(x.ln())?.sigma;
                z.powf(th + (1.0 - th) * alpha0)
            }
            PredictMode::LogPower => x.ln().powf(big_theta),
            PredictMode::Linear => z,
        })
    }
}

/// Leading-order closed forms: `σ_v ≈ √(2/(v log v))` and
/// `log F(v) ≈ √(8v/log v)`, valid for `v > e`.
pub fn asymptotic_forms(v: f64) -> Result<(f64, f64)> {
    if !(v > std::f64::consts::E) {
        return Err(Error::InvalidArgument(format!(
            "asymptotic_forms requires v > e, got {v}"
        )));
    }
    let sigma_approx = (2.0 / (v * v.ln())).sqrt();
    let log_f_approx = (8.0 * v / v.ln()).sqrt();
    Ok((sigma_approx, log_f_approx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn analytic() -> Analytic {
        Analytic::with_defaults().unwrap()
    }

    fn half() -> ThetaRational {
        ThetaRational::new(1, 2).unwrap()
    }

    #[test]
    fn estimate_rejects_small_x() {
        let a = analytic();
        assert!(a.estimate_powered(half(), 26.0).is_err());
        assert!(a.estimate_powered(half(), 27.0).is_ok());
    }

    #[test]
    fn estimate_fields_positive() {
        let a = analytic();
        let e = a.estimate_powered(half(), 1e8).unwrap();
        assert!(e.s7 > 0.0 && e.s8 > 0.0 && e.alpha > 0.0 && e.f_v > 0.0 && e.h_v > 0.0);
        // beta > 0: the count grows strictly faster than x^theta
        assert!(e.beta > 0.0, "beta = {}", e.beta);
    }

    #[test]
    fn s7_over_s8_approaches_one() {
        // the ratio is sigma_v / sqrt(2/((1-theta) log x log log x)),
        // which tends to 1; at 1e12 it should sit in [0.8, 1.25]
        let a = analytic();
        let e = a.estimate_powered(half(), 1e12).unwrap();
        let ratio = e.s7 / e.s8;
        assert!(
            (0.8..=1.25).contains(&ratio),
            "s7/s8 = {ratio} at x = 1e12"
        );
    }

    #[test]
    fn predict_ratio_modes() {
        let a = analytic();
        let th = half();
        for mode in [
            PredictMode::Simple,
            PredictMode::RefinedTheta,
            PredictMode::RefinedZero,
            PredictMode::LogPower,
            PredictMode::Linear,
        ] {
            let f = a.predict_ratio(th, 1e8, 1.0, 0.0, mode).unwrap();
            assert!((f - 1.0).abs() < 1e-12, "identity at z=1 for {mode:?}");
        }
        let simple = a.predict_ratio(th, 1e8, 4.0, 0.0, PredictMode::Simple).unwrap();
        assert!((simple - 2.0).abs() < 1e-12);
        let refined = a
            .predict_ratio(th, 1e8, 4.0, 0.0, PredictMode::RefinedTheta)
            .unwrap();
        assert!(refined > simple, "refined adds a positive exponent");
        let log_pow = a.predict_ratio(th, 1e8, 1.0, 2.0, PredictMode::LogPower).unwrap();
        assert!((log_pow - (1e8f64).ln().powi(2)).abs() < 1e-6);
        // out-of-window z rejected
        assert!(a
            .predict_ratio(th, 1e4, 1e9, 0.0, PredictMode::Simple)
            .is_err());
    }

    #[test]
    fn asymptotic_forms_values() {
        let (s, lf) = asymptotic_forms(100.0).unwrap();
        assert!((s - (2.0 / (100.0 * 100f64.ln())).sqrt()).abs() < 1e-15);
        assert!((lf - (800.0 / 100f64.ln()).sqrt()).abs() < 1e-12);
        // algebra of the two displayed forms: logF/(v sigma) = 2
        for v in [5.0, 20.0, 150.0] {
            let (s, lf) = asymptotic_forms(v).unwrap();
            assert!((lf / (v * s) - 2.0).abs() < 1e-12);
        }
        assert!(asymptotic_forms(2.0).is_err());
    }
}
