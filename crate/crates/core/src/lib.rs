//! Orthogonal polynomials of hypergeometric type and their operator algebra.
//!
//! The library implements, for the six canonical second-order weights
//! (`sigma(s) ∈ {1, s, 1−s², s²−1, s², s²+1}` with `tau(s) = αs + β`):
//!
//! - the orthogonal polynomial families `Φ_l` (triangular recurrence,
//!   Rodrigues chain, and classical-polynomial cross references),
//! - weighted scalar products through exact moment tables backed by a
//!   double-exponential adaptive integrator,
//! - the associated functions `Φ_{l,m} = σ^{m/2} d^m Φ_l/ds^m` together with
//!   the exact ladder maps `A_m`, `A_m⁺` and the factorized operators `H_m`,
//! - creation/annihilation matrices in the normalized basis, with the
//!   Heisenberg–Weyl / su(1,1) / su(2) classification,
//! - temporally stable coherent states, their overlaps, radial measures and
//!   resolution-of-identity moments (modified Bessel machinery included),
//! - the analytic (Fock-style) series representation with its weighted inner
//!   product and differential operator actions.
//!
//! Everything is organized so that each displayed identity has two
//! independent computational routes; [`verify`] packages those cross-checks
//! into named, tolerance-pinned suites.

pub mod assocfun;
pub mod bargmann;
pub mod cases;
pub mod coherent;
pub mod ladder;
pub mod poly;
pub mod polyengine;
pub mod quadrature;
pub mod scalar;
pub mod verify;

mod error;

pub use cases::{CaseKind, CaseParams, CaseSpec, Interval, SpectralIndexBound};
pub use error::{Error, Result};
pub use poly::Polynomial;
pub use scalar::{RealScalar, Scalar};
