//! Analytic machinery: the Dirichlet-series Euler product `𝒢(σ)`, its
//! logarithmic derivatives, the saddle point `σ_v`, the series `F(v)` and
//! `H_θ(x)`, and the estimators assembled from them.
//!
//! Every prime sum and Euler product is truncated at `prime_limit` and the
//! omitted mass over `p > P` is handled through the prime-density integral
//! `∫_P^∞ f(t) dt / log t`:
//!
//! * `Extrapolated` (default): the integral is *added* to the partial sum
//!   and the reported tail is an uncertainty envelope (a fixed fraction of
//!   the correction covering prime-count fluctuation around `t/log t`,
//!   plus quadrature residue and rounding).
//! * `Bounded`: the partial sum is returned as-is and the tail is an upper
//!   envelope of the omitted mass; the evaluation fails if that envelope
//!   exceeds `tol`.
//!
//! The series `F` and `H` need no analogous treatment: their tails collapse
//! to `Σ_{m>M} 1/(m ψ(m))`, which is known exactly from
//! `Σ_{m≥1} 1/(m ψ(m)) = ∏_p p²/(p²−1) = ζ(2)`, so both are evaluated to
//! rounding accuracy with the exact remainder folded in.

mod estimates;
mod euler;
mod saddle;
mod series;

pub use estimates::{asymptotic_forms, EstimateResult, PredictMode};
pub use euler::{prime_density_integral, EBoundResult};
pub use saddle::SaddlePoint;

use crate::primes::{generate_primes, PrimeTable};
use crate::{Error, Result};

/// How prime-sum tails are treated; see the module docs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMode {
    Bounded,
    Extrapolated,
}

/// Truncation limits and tolerances for all series and product evaluations.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    /// Truncation point P for sums and products over primes.
    pub prime_limit: u64,
    /// Budget M for sums over m; evaluations needing more terms fail.
    pub series_limit: u64,
    pub tail_mode: TailMode,
    pub tol: f64,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            prime_limit: 1_000_000,
            series_limit: 10_000_000,
            tail_mode: TailMode::Extrapolated,
            tol: 1e-9,
        }
    }
}

/// A numeric value together with its tail estimate.
///
/// `tail` is an absolute error envelope: in extrapolated mode the residual
/// uncertainty after the tail correction, in bounded mode an upper bound on
/// the omitted mass.
#[derive(Debug, Clone, Copy)]
pub struct Eval {
    pub value: f64,
    pub tail: f64,
}

/// Evaluation context: a prime table plus cached logarithms, shared by all
/// analytic operations. Methods are pure functions of `(inputs, cfg)`.
pub struct Analytic {
    cfg: EvalConfig,
    primes: Vec<u64>,
    ln_primes: Vec<f64>,
}

impl Analytic {
    pub fn new(cfg: EvalConfig) -> Result<Self> {
        validate_cfg(&cfg)?;
        let table = generate_primes(cfg.prime_limit)?;
        Ok(Self::from_primes(cfg, table.primes()))
    }

    /// Build from an existing table (for example a loaded prime cache);
    /// the table must reach `cfg.prime_limit`.
    pub fn with_table(cfg: EvalConfig, table: &PrimeTable) -> Result<Self> {
        validate_cfg(&cfg)?;
        if table.limit() < cfg.prime_limit {
            return Err(Error::InsufficientPrimes {
                need: cfg.prime_limit,
                have: table.limit(),
            });
        }
        Ok(Self::from_primes(cfg, table.primes_up_to(cfg.prime_limit)))
    }

    fn from_primes(cfg: EvalConfig, primes: &[u64]) -> Self {
        let primes = primes.to_vec();
        let ln_primes = primes.iter().map(|&p| (p as f64).ln()).collect();
        Self {
            cfg,
            primes,
            ln_primes,
        }
    }

    pub fn with_defaults() -> Result<Self> {
        Self::new(EvalConfig::default())
    }

    pub fn cfg(&self) -> &EvalConfig {
        &self.cfg
    }
}

fn validate_cfg(cfg: &EvalConfig) -> Result<()> {
    if cfg.prime_limit < 1000 {
        return Err(Error::InvalidArgument(format!(
            "prime_limit must be at least 1000, got {}",
            cfg.prime_limit
        )));
    }
    if !(cfg.tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {}",
            cfg.tol
        )));
    }
    if cfg.series_limit < 2 {
        return Err(Error::InvalidArgument(format!(
            "series_limit must be at least 2, got {}",
            cfg.series_limit
        )));
    }
    Ok(())
}

/// 6/π².
pub(crate) const SIX_OVER_PI2: f64 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);

/// ζ(2) = π²/6.
pub(crate) const ZETA2: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;
