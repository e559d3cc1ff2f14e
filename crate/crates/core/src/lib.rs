//! The deltoid map `f(x, y) = (y² − 2x, x² − 2y)` and its dynamics.
//!
//! * [`algebra`]: complex points, projective arithmetic, cubic and quartic solvers.
//! * [`curve`]: the deltoid, its tangent lines and dual curve, pedal curves.
//! * [`dynamics`]: the map itself, its Green function, Julia and Fatou sets.
//! * [`monodromy`]: preimage trees, path lifting and the iterated monodromy action.
//! * [`toolkit`]: rendering, file output and the verification suites behind the CLI.

// `!(x <= tol)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod curve;
pub mod dynamics;
pub mod error;
pub mod monodromy;
pub mod toolkit;

pub use algebra::{AffinePoint, ExtendedComplex, ProjectivePoint, C64};
pub use error::{Error, Result};
