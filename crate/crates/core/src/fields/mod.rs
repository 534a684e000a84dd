//! Coherent-state field expectations and the derived densities.
//!
//! Everything is built from plane-wave mode sums. A [`ModeTable`] holds the
//! quadrature nodes of one momentum-space integral with their complex
//! coefficients, so a field value at any spacetime point is a single pass of
//! `sum_n c_n exp(-i k_n . x)`. Every mode is an exact free solution, which is
//! what makes the finite-difference Maxwell residuals a clean O(h^2) test.
//!
//! Units are Heaviside-Lorentz with `hbar = c = 1`. Field layout: `E_i = F^{i0}`
//! and `B = (-F^{23}, -F^{31}, -F^{12})`.

mod grid;
mod maxwell;
mod modes;
mod narrow;
mod profile;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::spacetime::{FourVector, ThreeVector};

pub use grid::{
    grid_integrals, lattice_fields, narrow_packet_grid_integrals, GridIntegrals, GridSpec, LatticeFields,
    WavefunctionNorms, wavefunction_norms,
};
pub use maxwell::{check_tensor_covariance, maxwell_convergence, maxwell_residuals, FieldSource, MaxwellResiduals};
pub use modes::{
    energy_density, field_expectation, positive_frequency_tensor, superposition_expectation, wavefunction_measures,
    FieldEvaluator, Kernel, ModeTable, PositiveFrequencySample, WavefunctionSample, COHERENT_NORMALIZATION,
    WAVEFUNCTION_NORMALIZATION,
};
pub use narrow::{narrow_packet_fields, NarrowPacket};
pub use profile::{
    profile, profile_general, profile_prefactor, profile_with_cross_check, reduced_profile_value, Axis, Component, ProfileCurve, ProfileSample,
    GeneralProfileEvaluator,
};

type C = Complex64;

/// Real field values at one spacetime point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSample {
    pub x: FourVector,
    pub e: ThreeVector,
    pub b: ThreeVector,
    /// Positive-frequency parts, when the sample came from a quadrature.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e_plus: Option<[C; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<[C; 3]>,
    /// Quadrature error estimate of the six real components (0 for closed forms).
    pub error_estimate: f64,
}

impl FieldSample {
    pub fn from_real(x: FourVector, e: ThreeVector, b: ThreeVector) -> Self {
        FieldSample { x, e, b, e_plus: None, b_plus: None, error_estimate: 0.0 }
    }

    /// `[E_x, E_y, E_z, B_x, B_y, B_z]`.
    pub fn components(&self) -> [f64; 6] {
        [self.e.x, self.e.y, self.e.z, self.b.x, self.b.y, self.b.z]
    }

    /// Real antisymmetric tensor `F^{mu nu}`.
    pub fn tensor(&self) -> Matrix4<f64> {
        tensor_from_fields(self.e.to_array(), self.b.to_array())
    }

    pub fn from_tensor(x: FourVector, f: &Matrix4<f64>) -> Self {
        let (e, b) = fields_from_tensor(f);
        FieldSample::from_real(x, ThreeVector::from_array(e), ThreeVector::from_array(b))
    }

    pub fn energy_density(&self) -> f64 {
        energy_density(self)
    }
}

/// Builds `F^{mu nu}` from `E` and `B`.
pub fn tensor_from_fields<T: nalgebra::Scalar + Copy + std::ops::Neg<Output = T> + Default>(e: [T; 3], b: [T; 3]) -> Matrix4<T> {
    let z = T::default();
    Matrix4::new(
        z, -e[0], -e[1], -e[2], //
        e[0], z, -b[2], b[1], //
        e[1], b[2], z, -b[0], //
        e[2], -b[1], b[0], z,
    )
}

/// Inverse of [`tensor_from_fields`].
pub fn fields_from_tensor<T: nalgebra::Scalar + Copy + std::ops::Neg<Output = T>>(f: &Matrix4<T>) -> ([T; 3], [T; 3]) {
    (
        [f[(1, 0)], f[(2, 0)], f[(3, 0)]],
        [-f[(2, 3)], -f[(3, 1)], -f[(1, 2)]],
    )
}

pub(crate) fn cross_real_complex(k: ThreeVector, e: [C; 3]) -> [C; 3] {
    [k.y * e[2] - k.z * e[1], k.z * e[0] - k.x * e[2], k.x * e[1] - k.y * e[0]]
}

pub(crate) fn re3(v: [C; 3]) -> ThreeVector {
    ThreeVector::new(v[0].re, v[1].re, v[2].re)
}
