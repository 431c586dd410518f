//! # nuclear-core
//!
//! Exact and asymptotic counting of *powered* and *nuclear* numbers.
//!
//! An integer `n` is powered (relative to a parameter `θ ∈ (0,1)`) when its
//! squarefree kernel — the radical `k(n)`, the product of the distinct primes
//! of `n` — satisfies `k(n) ≤ n^θ`. Nuclear numbers are counted by
//! `N(x, y) = #{m ≤ x : k(m) ≤ y}`.
//!
//! The crate computes these counting functions exactly by two independent
//! algorithms, and evaluates the associated analytic machinery (Dirichlet
//! series Euler products, saddle points, the series `F(v)` and `H_θ(x)`) so
//! exact counts can be compared against their asymptotic predictions at
//! workstation scale.
//!
//! Module map:
//!
//! * [`primes`] — prime generation, the binary prime-cache format.
//! * [`sieve`] — segmented sieving of radical / Möbius / ψ, squarefree
//!   counting primitives, Rankin weights.
//! * [`counts`] — exact counts `S_θ(x)`, `N(x,y)`, `B(x,z)`, `S_{θ,Θ}(x)`,
//!   the constructive lower bound `W(x)`, the `(l, m)` decomposition, and
//!   the Erdős ratio diagnostic.
//! * [`analytic`] — Euler products with tail control, the saddle solver,
//!   the series `F` and `H`, and the estimators built from them.

pub mod analytic;
pub mod counts;
mod error;
mod kahan;
pub mod primes;
pub mod sieve;
mod theta;

pub use error::{Error, Result};
pub use kahan::KahanSum;
pub use theta::ThetaRational;
