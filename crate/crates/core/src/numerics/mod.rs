//! Special functions and deterministic quadrature.

mod quadrature;
mod special;

pub use quadrature::{
    gauss_legendre, integrate_ball, integrate_radial, integrate_radial_raw, integrate_sphere, integrate_sphere_raw,
    radial_rule, BallGrid, GaussRule, IntegrationResult, Level, QuadValue, QuadratureSpec,
};
pub use special::{bessel_j, bessel_j0123, gamma_fn, j1_over_x, j2_over_x, spherical_j, spherical_j01};
