//! Iterative quantum amplitude estimation, simulated over an exact Bernoulli oracle.
//!
//! The crate is `no_std` (it needs `alloc` for stage traces) and contains the
//! whole numerical side of the estimators:
//!
//! - [`angle`]: amplitude/angle/amplified-probability transforms and the
//!   quadrant bookkeeping that keeps amplified estimates identifiable.
//! - [`statkit`]: quantiles, frequentist intervals, conjugate updates,
//!   credible intervals and the stage-to-stage prior transforms.
//! - [`oracle`]: seeded shot sampling for `Q^k A` and oracle-call accounting.
//! - [`estimators`]: Classical QAE, AAE, IQAE (standard and hybrid
//!   schedules) and the Bayesian variants with normal or beta priors.
//!
//! IO, parallel sweeps and the command line live in the `qae-bench` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod angle;
mod error;
pub mod estimators;
pub mod oracle;
pub mod special;
pub mod statkit;

pub use error::{Error, Result};
