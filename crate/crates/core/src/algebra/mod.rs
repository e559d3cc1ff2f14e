//! Complex scalars, affine and projective points, and the cubic/quartic
//! solvers the rest of the crate is built on.

mod complex;
mod point;
mod solve;

pub use complex::{
    checked_div, format_complex, format_real, omega, omega2, parse_complex, principal_sqrt,
    ExtendedComplex, C64,
};
pub use point::{proj_distance, proj_equal, AffinePoint, DualLineCoords, ProjectivePoint};
pub use solve::{
    ordering_key, solve_monic_cubic, solve_monic_quartic, solve_tangent_cubic, CubicRoots,
    QuarticRoots, MULTIPLICITY_SEPARATION,
};
