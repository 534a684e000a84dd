//! Electromagnetic field expectations of single-photon wavepackets.
//!
//! The crate covers the kinematics of massless helicity states (Lorentz
//! matrices, little group, Wigner phases), polarization vectors and field
//! tensors, Gaussian test amplitudes and their transformations, quadrature of
//! the coherent-state field expectation, dimensionless localization profiles
//! and their large-distance tails.

// `!(x > 0.0)` is the idiom that also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod fields;
pub mod numerics;
pub mod poincare;
pub mod polarization;
pub mod spacetime;
pub mod tolerances;
pub mod wavepacket;

pub use error::{Error, Result};
