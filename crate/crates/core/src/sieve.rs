//! Segmented sieving of per-integer arithmetic data and exact squarefree
//! counting primitives.
//!
//! For every `n` in a range the sieve produces
//!
//! * the radical `k(n)` — the product of the distinct primes of `n`,
//! * the Möbius value `μ(n) ∈ {−1, 0, 1}`,
//! * `ψ(n) = ∏_{p|n} (p + 1)` over distinct primes.
//!
//! The kernel initializes `radical[n] = 1` and multiplies in `p` for every
//! multiple of every prime `p ≤ √hi`; the prime powers are stripped from a
//! companion copy of `n` so whatever is left after all small primes is
//! exactly the one prime factor `> √hi` (or 1). Division by a fixed odd `p`
//! is done by multiplying with the inverse of `p` modulo 2^64, which is
//! exact whenever `p` divides the operand.

use crate::primes::PrimeTable;
use crate::{Error, Result};

/// Largest segment span `sieve_segment` accepts (per-element state is
/// 25 bytes, so this caps a segment at ~1.6 GiB of workspace).
pub const MAX_SEGMENT_SPAN: u64 = 1 << 26;

/// Per-integer arithmetic data for a contiguous range `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct ArithSegment {
    lo: u64,
    hi: u64,
    radical: Vec<u64>,
    mobius: Vec<i8>,
    psi: Vec<u64>,
}

impl ArithSegment {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    #[inline]
    fn idx(&self, n: u64) -> usize {
        debug_assert!(n >= self.lo && n <= self.hi);
        (n - self.lo) as usize
    }

    /// Radical `k(n)`; `n` must lie in the segment.
    pub fn radical(&self, n: u64) -> u64 {
        self.radical[self.idx(n)]
    }

    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[self.idx(n)]
    }

    pub fn psi(&self, n: u64) -> u64 {
        self.psi[self.idx(n)]
    }

    pub fn radicals(&self) -> &[u64] {
        &self.radical
    }

    pub fn mobius_values(&self) -> &[i8] {
        &self.mobius
    }

    pub fn psi_values(&self) -> &[u64] {
        &self.psi
    }
}

/// Inverse of odd `p` modulo 2^64 by Newton iteration.
#[inline]
fn inv_mod_2_64(p: u64) -> u64 {
    debug_assert!(p & 1 == 1);
    let mut inv = p;
    for _ in 0..5 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
    }
    debug_assert_eq!(inv.wrapping_mul(p), 1);
    inv
}

/// Streaming radical kernel over `[lo, hi]`.
///
/// `emit(n, k(n))` is called for every n ascending. `scratch_rad` and
/// `scratch_rem` are reused across calls to avoid reallocation.
fn radical_kernel(
    lo: u64,
    hi: u64,
    primes: &[u64],
    scratch_rad: &mut Vec<u64>,
    scratch_rem: &mut Vec<u64>,
    mut emit: impl FnMut(u64, u64),
) {
    let span = (hi - lo + 1) as usize;
    scratch_rad.clear();
    scratch_rad.resize(span, 1);
    scratch_rem.clear();
    scratch_rem.extend(lo..=hi);
    let rad = &mut scratch_rad[..];
    let rem = &mut scratch_rem[..];

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
                rad[j] <<= 1;
                rem[j] >>= rem[j].trailing_zeros();
                j += 2;
            }
        } else {
            let inv = inv_mod_2_64(p);
            let max_exact = u64::MAX / p;
            let mut j = (first - lo) as usize;
            while j < span {
                rad[j] *= p;
                // strip every power of p: q = rem * p^{-1} mod 2^64 is the
                // true quotient precisely when p | rem, detectable by range
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
        let n = lo + j as u64;
        let k = if rem[j] > 1 { rad[j] * rem[j] } else { rad[j] };
        emit(n, k);
    }
}

/// Reusable radical sieve bound to a prime table.
pub(crate) struct RadicalSieve<'a> {
    primes: &'a [u64],
    rad: Vec<u64>,
    rem: Vec<u64>,
}

impl<'a> RadicalSieve<'a> {
    pub fn new(table: &'a PrimeTable) -> Self {
        Self {
            primes: table.primes(),
            rad: Vec::new(),
            rem: Vec::new(),
        }
    }

    /// Run `emit(n, k(n))` over `[lo, hi]`; the prime table must cover √hi.
    pub fn run(&mut self, lo: u64, hi: u64, emit: impl FnMut(u64, u64)) {
        radical_kernel(lo, hi, self.primes, &mut self.rad, &mut self.rem, emit);
    }
}

/// Sieve radical, Möbius and ψ exactly over `[lo, hi]`.
///
/// Requires `1 ≤ lo ≤ hi` and a prime table reaching `√hi`.
pub fn sieve_segment(lo: u64, hi: u64, primes: &PrimeTable) -> Result<ArithSegment> {
    if lo < 1 || lo > hi {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= lo <= hi, got [{lo}, {hi}]"
        )));
    }
    let span = hi - lo + 1;
    if span > MAX_SEGMENT_SPAN {
        return Err(Error::ResourceLimit(format!(
            "segment span {span} exceeds {MAX_SEGMENT_SPAN}"
        )));
    }
    let root = hi.isqrt();
    if primes.limit() < root {
        return Err(Error::InsufficientPrimes {
            need: root,
            have: primes.limit(),
        });
    }

    let span = span as usize;
    let mut radical = vec![1u64; span];
    let mut rem: Vec<u64> = (lo..=hi).collect();
    let mut psi = vec![1u64; span];
    let mut omega = vec![0u8; span];

    for &p in primes.primes() {
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
                radical[j] <<= 1;
                psi[j] *= 3;
                omega[j] += 1;
                rem[j] >>= rem[j].trailing_zeros();
                j += 2;
            }
        } else {
            let inv = inv_mod_2_64(p);
            let max_exact = u64::MAX / p;
            let mut j = (first - lo) as usize;
            while j < span {
                radical[j] *= p;
                psi[j] *= p + 1;
                omega[j] += 1;
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

    let mut mobius = vec![0i8; span];
    for j in 0..span {
        let n = lo + j as u64;
        if rem[j] > 1 {
            radical[j] *= rem[j];
            psi[j] *= rem[j] + 1;
            omega[j] += 1;
        }
        if radical[j] == n {
            mobius[j] = if omega[j] % 2 == 0 { 1 } else { -1 };
        }
    }

    Ok(ArithSegment {
        lo,
        hi,
        radical,
        mobius,
        psi,
    })
}

/// Radical, Möbius and ψ of a single integer by trial division.
///
/// Agrees with `sieve_segment` on any segment containing `n`; useful for
/// spot checks and for inputs far from any sieved range.
pub fn arith_point(n: u64) -> Result<(u64, i8, u64)> {
    if n == 0 {
        return Err(Error::InvalidArgument("arith_point requires n >= 1".into()));
    }
    let mut rem = n;
    let mut radical = 1u64;
    let mut psi = 1u64;
    let mut omega = 0u32;
    let mut divide_out = |rem: &mut u64, p: u64| {
        if *rem % p == 0 {
            radical *= p;
            psi *= p + 1;
            omega += 1;
            while *rem % p == 0 {
                *rem /= p;
            }
        }
    };
    divide_out(&mut rem, 2);
    divide_out(&mut rem, 3);
    let mut p = 5u64;
    while p * p <= rem {
        divide_out(&mut rem, p);
        divide_out(&mut rem, p + 2);
        p += 6;
    }
    if rem > 1 {
        radical *= rem;
        psi *= rem + 1;
        omega += 1;
    }
    let mobius = if radical == n {
        if omega % 2 == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    };
    Ok((radical, mobius, psi))
}

/// Möbius values for 1..=limit via a smallest-prime-factor sieve.
pub(crate) fn mobius_table(limit: u64) -> Vec<i8> {
    let limit = limit as usize;
    let mut mu = vec![0i8; limit + 1];
    if limit >= 1 {
        mu[1] = 1;
    }
    let spf = spf_table(limit as u64);
    for n in 2..=limit {
        let p = spf[n] as usize;
        let m = n / p;
        mu[n] = if m % p == 0 { 0 } else { -mu[m] };
    }
    mu
}

/// Smallest prime factor for 0..=limit (`spf[0] = spf[1] = 0`).
pub(crate) fn spf_table(limit: u64) -> Vec<u32> {
    let limit = limit as usize;
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
        if i * i > limit {
            // remaining zeros are primes
            for (j, s) in spf.iter_mut().enumerate().take(limit + 1).skip(i + 1) {
                if *s == 0 {
                    *s = j as u32;
                }
            }
            break;
        }
    }
    spf
}

/// Distinct prime factors of a squarefree `k` (ascending), or `None` if `k`
/// is not squarefree.
pub(crate) fn squarefree_factorization(mut k: u64) -> Option<Vec<u64>> {
    let mut factors = Vec::new();
    let mut strip = |k: &mut u64, p: u64| -> bool {
        if *k % p == 0 {
            *k /= p;
            if *k % p == 0 {
                return false;
            }
            factors.push(p);
        }
        true
    };
    if !strip(&mut k, 2) || !strip(&mut k, 3) {
        return None;
    }
    let mut p = 5u64;
    while p * p <= k {
        if !strip(&mut k, p) || !strip(&mut k, p + 2) {
            return None;
        }
        p += 6;
    }
    if k > 1 {
        factors.push(k);
    }
    factors.sort_unstable();
    Some(factors)
}

/// Integers `e ≤ bound` coprime to the squarefree number with prime factors
/// `k_primes`, by inclusion–exclusion over the 2^ω(k) divisors.
fn coprime_count(bound: u64, k_primes: &[u64]) -> u64 {
    // signed accumulation over divisors, iterative subset walk
    let mut total: i64 = 0;
    let n_sub = 1u32 << k_primes.len();
    for mask in 0..n_sub {
        let mut d = 1u64;
        let mut ok = true;
        for (i, &p) in k_primes.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match d.checked_mul(p) {
                    Some(v) if v <= bound => d = v,
                    _ => {
                        ok = false;
                        break;
                    }
                }
            }
        }
        if !ok {
            continue;
        }
        let term = (bound / d) as i64;
        if mask.count_ones() % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u64
}

/// Exact `#{l ≤ n : μ²(l k) = 1}` for squarefree `k` with prime factors
/// `k_primes`, given a Möbius table reaching `√n`.
pub(crate) fn squarefree_coprime_count_exact(n: u64, k_primes: &[u64], mu: &[i8]) -> u64 {
    // mu-over-d^2: sum over d <= sqrt(n), gcd(d, k) = 1 of mu(d) * coprime(n / d^2)
    let root = n.isqrt();
    debug_assert!((mu.len() as u64) > root);
    let mut total: i64 = 0;
    for d in 1..=root {
        let m = mu[d as usize];
        if m == 0 {
            continue;
        }
        if k_primes.iter().any(|&p| d % p == 0) {
            continue;
        }
        let inner = coprime_count(n / (d * d), k_primes) as i64;
        total += m as i64 * inner;
    }
    total as u64
}

/// Exact count of squarefree `l ≤ z` with `l k` squarefree, i.e.
/// `Σ_{l ≤ z} μ²(l k)`, for squarefree `k ≥ 1`.
pub fn squarefree_coprime_count(z: f64, k: u64) -> Result<u64> {
    if !(z >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "squarefree_coprime_count needs z >= 0, got {z}"
        )));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be >= 1".into()));
    }
    let k_primes = squarefree_factorization(k)
        .ok_or_else(|| Error::InvalidArgument(format!("k = {k} is not squarefree")))?;
    let n = z.floor() as u64;
    if n == 0 {
        return Ok(0);
    }
    let mu = mobius_table(n.isqrt());
    Ok(squarefree_coprime_count_exact(n, &k_primes, &mu))
}

/// Rankin weight parameter γ ∈ [0, 1/2].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankinWeight {
    gamma: f64,
}

impl RankinWeight {
    pub fn new(gamma: f64) -> Result<Self> {
        if !(0.0..=0.5).contains(&gamma) {
            return Err(Error::InvalidArgument(format!(
                "Rankin weight must lie in [0, 1/2], got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

/// The weight `r_γ(m) = ∏_{p|m} (1 + 4γ p^{−1/2})`.
pub fn r_gamma(m: u64, w: RankinWeight) -> Result<f64> {
    if m == 0 {
        return Err(Error::InvalidArgument("r_gamma requires m >= 1".into()));
    }
    let (radical, _, _) = arith_point(m)?;
    let mut rem = radical;
    let mut product = 1.0;
    let mut factor = |rem: &mut u64, p: u64| {
        if *rem % p == 0 {
            *rem /= p;
            product *= 1.0 + 4.0 * w.gamma / (p as f64).sqrt();
        }
    };
    factor(&mut rem, 2);
    factor(&mut rem, 3);
    let mut p = 5u64;
    while p * p <= rem {
        factor(&mut rem, p);
        factor(&mut rem, p + 2);
        p += 6;
    }
    if rem > 1 {
        product *= 1.0 + 4.0 * w.gamma / (rem as f64).sqrt();
    }
    Ok(product)
}
