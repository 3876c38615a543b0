//! Certified verification toolkit for the Liouville problem
//! Δv + N vᵖ + M |∇v|^q = 0 with the critical gradient exponent
//! q = 2p/(p+1).
//!
//! The crate is organized bottom-up:
//! - [`exact`] — rationals, quadratic surds ℚ(√d), rigorous interval
//!   enclosures and Sturm-sequence sign certificates;
//! - [`coeffs`] — the multiplier frame: auxiliary exponents, the vanishing
//!   condition that pins the multiplier S, and the coefficient/K-constant
//!   pipeline;
//! - [`young`] — feasibility of the Young-inequality exponent bookkeeping;
//! - [`thresholds`] — the gradient-coefficient thresholds M₁, M₂, M_C and
//!   the discriminant and comparison lemmas behind them;
//! - [`claims`] — the ten inequality claims, each with an all-`n` reduction
//!   certificate and exact per-`n` verification;
//! - [`jets`] — third-order jet sampling and numerical verification of the
//!   pointwise differential identities;
//! - [`shooter`] — a radial ODE shooter for exploring ground states;
//! - [`report`] — serializable run reports.

pub mod claims;
pub mod coeffs;
pub mod exact;
pub mod jets;
pub mod report;
pub mod shooter;
pub mod thresholds;
pub mod young;

pub use exact::{Exact, QuadExt, RatInterval, Rational, Scalar, UniPoly};
