//! Certified spectral and contractivity computations for the heat semigroups
//! on the free orthogonal quantum group `O_N⁺` and the free permutation
//! quantum group `S_N⁺`.
//!
//! The generator of the semigroup acts diagonally on corepresentation levels,
//! with eigenvalues expressed through (monic) Chebyshev polynomials of the
//! second kind. Everything that can be computed exactly is computed exactly:
//! eigenvalues, eigenspace dimensions and the two-sided eigenvalue bounds are
//! big-rational or quadratic-integer arithmetic with no rounding anywhere.
//! Quantities that involve series or transcendental functions (contractivity
//! envelopes, hypercontractivity times, log-Sobolev constants) are returned
//! as [`CertifiedValue`] enclosures `[lo, hi]` guaranteed to contain the true
//! value under the floating-point contract documented in [`interval`].
//!
//! All operations are pure functions of their inputs with no shared mutable
//! state; every type here is `Send + Sync` and safe to use from any number of
//! threads.

// validation guards are written `!(x > 0.0)` so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chebyshev;
pub mod contractivity;
pub mod error;
pub mod hypercontractivity;
pub mod interval;
pub mod levelmodel;
pub mod quadratic;
pub mod rational;
pub mod spectrum;

pub use chebyshev::{cheb_at_sqrt, cheb_coeff_eval, cheb_pair, cheb_zeros, RootEnclosure};
pub use error::{Error, Result};
pub use interval::CertifiedValue;
pub use quadratic::QuadraticValue;
pub use rational::Rational;
pub use spectrum::{BoundReport, Family, GroupKind, SpectralLine, UpperBound};
