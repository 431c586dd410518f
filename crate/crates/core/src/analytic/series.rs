//! The series `F(v)` and `H_θ(x)`.
//!
//! `F(v) = (6/π²) Σ_{m≥1} min(1, e^v/m) / ψ(m)` splits at `E = ⌊e^v⌋`: the
//! head sums `1/ψ(m)` directly and the remainder is
//! `e^v Σ_{m>E} 1/(m ψ(m))`, known exactly from the Euler-product identity
//! `Σ_{m≥1} 1/(m ψ(m)) = ∏_p (1 + 1/(p²−1)) = ζ(2)`. The same split works
//! for `H_θ(x)` with head weight `m^κ/ψ(m)` and crossover `E = ⌊x^{1−θ}⌋`
//! (κ + 1 = 1/(1−θ)). Both evaluations are therefore exact up to rounding;
//! `series_limit` only gates how large a head the budget allows.

use super::{Analytic, Eval, SIX_OVER_PI2, ZETA2};
use crate::kahan::KahanSum;
use crate::primes::generate_primes;
use crate::{Error, Result, ThetaRational};

const PSI_SEGMENT_SPAN: u64 = 1 << 20;

/// Stream `f(m, ψ(m))` for m = 1..=limit via segmented sieving.
pub(crate) fn for_each_psi(limit: u64, mut f: impl FnMut(u64, u64)) -> Result<()> {
    if limit == 0 {
        return Ok(());
    }
    let table = generate_primes(limit.isqrt().max(2))?;
    let primes = table.primes();
    let mut psi: Vec<u64> = Vec::new();
    let mut rem: Vec<u64> = Vec::new();

    let mut lo = 1u64;
    while lo <= limit {
        let hi = limit.min(lo + PSI_SEGMENT_SPAN - 1);
        let span = (hi - lo + 1) as usize;
        psi.clear();
        psi.resize(span, 1);
        rem.clear();
        rem.extend(lo..=hi);
        let root = hi.isqrt();
        for &p in primes {
            if p > root {
                break;
            }
            let first = lo.div_ceil(p) * p;
            if first > hi {
                continue;
            }
            if p == 2 {
                let mut j = (first - lo) as usize;
                while j < span {
                    psi[j] *= 3;
                    rem[j] >>= rem[j].trailing_zeros();
                    j += 2;
                }
            } else {
                let max_exact = u64::MAX / p;
                let inv = {
                    let mut inv = p;
                    for _ in 0..5 {
                        inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
                    }
                    inv
                };
                let mut j = (first - lo) as usize;
                while j < span {
                    psi[j] *= p + 1;
                    loop {
                        let q = rem[j].wrapping_mul(inv);
                        if q > max_exact {
                            break;
                        }
                        rem[j] = q;
                    }
                    j += p as usize;
                }
            }
        }
        for j in 0..span {
            let value = if rem[j] > 1 { psi[j] * (rem[j] + 1) } else { psi[j] };
            f(lo + j as u64, value);
        }
        lo = hi + 1;
    }
    Ok(())
}

impl Analytic {
    fn series_head(&self, what: &str, e_float: f64) -> Result<u64> {
        let head = e_float.floor();
        if head > self.cfg.series_limit as f64 {
            return Err(Error::PrecisionUnreachable {
                tail: f64::INFINITY,
                tol: self.cfg.tol,
                hint: format!(
                    "{what} needs ~{head:.3e} head terms, series_limit is {}",
                    self.cfg.series_limit
                ),
            });
        }
        Ok(head as u64)
    }

    /// `F(v) = (6/π²) Σ_m min(1, e^v/m)/ψ(m)` for `v ≥ 0`.
    pub fn f_series(&self, v: f64) -> Result<Eval> {
        if !(v >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "f_series requires v >= 0, got {v}"
            )));
        }
        let ev = v.exp();
        let head = self.series_head("f_series", ev)?;
        let mut inv_psi = KahanSum::new();
        let mut inv_m_psi = KahanSum::new();
        for_each_psi(head, |m, psi| {
            let pf = psi as f64;
            inv_psi.add(1.0 / pf);
            inv_m_psi.add(1.0 / (m as f64 * pf));
        })?;
        let remainder = (ZETA2 - inv_m_psi.value()).max(0.0);
        let value = SIX_OVER_PI2 * (inv_psi.value() + ev * remainder);
        // exact-tail split: uncertainty is rounding only
        let tail = 8.0 * f64::EPSILON * SIX_OVER_PI2 * (inv_psi.value() + ev * ZETA2)
            + f64::MIN_POSITIVE;
        Ok(Eval { value, tail })
    }

    /// `H_θ(x) = (6/(π² x^θ)) Σ_m (m^κ/ψ(m)) min(1, x m^{−κ−1})` for `x ≥ 1`.
    pub fn h_series(&self, theta: ThetaRational, x: f64) -> Result<Eval> {
        if !(x >= 1.0) {
            return Err(Error::InvalidArgument(format!(
                "h_series requires x >= 1, got {x}"
            )));
        }
        let th = theta.value();
        let (k_num, k_den) = theta.kappa();
        let kappa = k_num as f64 / k_den as f64;
        let head = self.series_head("h_series", x.powf(1.0 - th))?;
        let mut head_sum = KahanSum::new();
        let mut inv_m_psi = KahanSum::new();
        for_each_psi(head, |m, psi| {
            let mf = m as f64;
            let pf = psi as f64;
            head_sum.add((kappa * mf.ln()).exp() / pf);
            inv_m_psi.add(1.0 / (mf * pf));
        })?;
        let remainder = (ZETA2 - inv_m_psi.value()).max(0.0);
        let x_theta = (th * x.ln()).exp();
        let value = SIX_OVER_PI2 * (head_sum.value() + x * remainder) / x_theta;
        let tail = 8.0 * f64::EPSILON * SIX_OVER_PI2 * (head_sum.value() + x * ZETA2) / x_theta
            + f64::MIN_POSITIVE;
        Ok(Eval { value, tail })
    }
}
