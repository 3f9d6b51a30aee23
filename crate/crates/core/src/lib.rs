//! Analytic LRU miss-rate curves for power-law popularities under the
//! independent reference model, plus a brute-force trace simulator used to
//! check every closed form.
//!
//! The analytic side works in the continuous domain: the popularity law
//! `p_i = k / i^a` is integrated over ranks, which turns the re-reference
//! CCDF, the working-set function and the Fagin/Che miss rate into
//! generalized exponential integrals. See [`model`] for the entry points.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod asymptotics;
pub mod curve;
pub mod error;
pub mod model;
pub mod ratio;
pub mod sim;
pub mod specfun;

pub use error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Tolerance used to snap an exponent onto a special case (0, 1/2, 1, ...).
pub(crate) const SNAP_TOL: f64 = 1e-9;

pub(crate) fn near(x: f64, target: f64) -> bool {
    (x - target).abs() < SNAP_TOL
}
