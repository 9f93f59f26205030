//! Bessel functions, their zeros, and the radial conditions built from them.

mod annulus;
mod bessel;
mod order;
mod roots;
mod zeros;

pub use annulus::{annulus_cross_zero, annulus_cross_zeros_below, CrossKind};
pub use bessel::{bessel_j, bessel_j_deriv, bessel_jy, bessel_y, bessel_y_deriv, BesselJY};
pub use order::BesselOrder;
pub use roots::{refine_root, RootBracket};
pub use zeros::{
    ball_neumann_radial_root, ball_neumann_radial_roots_below, bessel_j_zero, bessel_j_zeros_below,
    bessel_jprime_zero, bessel_jprime_zeros_below, neumann_first_bounds, NeumannBounds,
};
