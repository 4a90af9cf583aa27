//! Computation and verification engine for hyperharmonic number series with
//! reciprocal binomial coefficients.
//!
//! The crate evaluates the closed forms of such series in terms of classical
//! Euler sums, zeta values and finite harmonic boundary sums, recomputes each
//! target series by independent brute-force summation, and reports agreement
//! or discrepancy. Exact combinatorics run on arbitrary-precision rationals;
//! floating evaluation runs in double-double precision with tracked error
//! bounds.

pub mod accel;
pub mod approx;
pub mod closed;
pub mod config;
pub mod constants;
pub mod dd;
pub mod engine;
pub mod error;
pub mod euler;
pub mod exact;
pub mod identities;
pub mod oracle;
pub mod quadrature;
pub mod rational;
pub mod report;
pub mod sequences;
pub mod suites;
pub mod tail;

pub use approx::Approx;
pub use closed::{reciprocal_binomial_weights, SumKind, SumSpec};
pub use config::EngineConfig;
pub use dd::DD;
pub use engine::Engine;
pub use error::{Error, Result};
pub use euler::{euler_reduction_check, EulerSumSpec, Sign};
pub use oracle::OracleOutcome;
pub use rational::Rat;
pub use report::{Status, VerificationReport};
pub use suites::grid_specs;
