//! Numerical laboratory for the biharmonic heat flow `∂t u = −Δ²u`.
//!
//! * [`spectral`]: periodic grids, spectral calculus and exact evolution.
//! * [`kernel`]: the heat kernel profile, convolution and the step profile.
//! * [`tychonoff`]: a non-zero solution with zero initial trace, evaluated with
//!   certified truncation bounds.
//! * [`quantities`]: monitor quantities, cutoffs and weighted energies.
//! * [`stepexample`]: blow-up and speed constants of the step-data solution.
//! * [`harness`]: explicit constants and verification suites.
//! * [`cli`]: the `biharm` command line.

pub mod cli;
pub mod error;
pub mod harness;
pub mod kernel;
pub mod quadrature;
pub mod quantities;
pub mod spectral;
pub mod stepexample;
pub mod tychonoff;

pub use error::{Error, Result};
