//! Symbolic separability analysis for the fourth-order field equation
//! obtained by squaring the Laplace–Beltrami operator (the bi-Helmholtz
//! equation), together with a numeric solver for the clamped circular
//! vibrating plate that the same equation governs.
//!
//! The crate has three layers:
//!
//! * [`symbolic`] — an exact expression engine over rationals with jet
//!   variables for the derivatives of separated profiles,
//! * [`geometry`] and [`separation`] — metric-derived operator coefficients,
//!   lifted derivations along coordinates, and the regular/constrained
//!   separability tests built from them,
//! * [`bessel`] and [`plate`] — the cylinder-function evaluations and the
//!   clamped-plate frequency solver used for the numeric cross-checks.

pub mod bessel;
pub mod coords;
pub mod error;
pub mod geometry;
pub mod plate;
pub mod separation;
pub mod symbolic;

#[cfg(test)]
mod proptools;
