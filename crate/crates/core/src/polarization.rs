//! Helicity polarization vectors and the gauge-invariant field tensor
//! coefficient `T^{mu nu} = k^mu eps^nu - k^nu eps^mu`.
//!
//! Polarization vectors at general momentum are the standard rotation applied
//! to the reference vectors at `k = z`, so `eps^0 = 0` everywhere and
//! `eps(k, -1) = -conj(eps(k, +1))`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::poincare::{standard_rotation, wigner_angle, wigner_rotation_angle};
use crate::spacetime::{FourVector, LorentzTransform, Rotation, ThreeVector};

type C = Complex64;

/// Photon helicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i32", into = "i32")]
pub enum Helicity {
    Minus,
    Plus,
}

impl Helicity {
    pub const BOTH: [Helicity; 2] = [Helicity::Plus, Helicity::Minus];

    pub fn value(self) -> i32 {
        match self {
            Helicity::Plus => 1,
            Helicity::Minus => -1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    pub fn flipped(self) -> Helicity {
        match self {
            Helicity::Plus => Helicity::Minus,
            Helicity::Minus => Helicity::Plus,
        }
    }
}

impl TryFrom<i32> for Helicity {
    type Error = Error;
    fn try_from(v: i32) -> Result<Self> {
        match v {
            1 => Ok(Helicity::Plus),
            -1 => Ok(Helicity::Minus),
            _ => Err(invalid(format!("helicity must be +1 or -1, got {v}"))),
        }
    }
}

impl From<Helicity> for i32 {
    fn from(h: Helicity) -> i32 {
        h.value()
    }
}

impl fmt::Display for Helicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.value())
    }
}

/// Complex polarization four-vector attached to a momentum and helicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PolarizationVector {
    pub components: [C; 4],
    pub k: FourVector,
    pub helicity: Helicity,
}

impl PolarizationVector {
    pub fn spatial(&self) -> [C; 3] {
        [self.components[1], self.components[2], self.components[3]]
    }

    /// `k_mu eps^mu`.
    pub fn lorentz_condition(&self) -> C {
        let e = &self.components;
        e[0] * self.k.t - e[1] * self.k.x - e[2] * self.k.y - e[3] * self.k.z
    }

    /// Spatial `conj(eps) . eps`.
    pub fn spatial_norm_sqr(&self) -> f64 {
        self.spatial().iter().map(|z| z.norm_sqr()).sum()
    }
}

fn rotate_complex(r: &Rotation, v: [C; 3]) -> [C; 3] {
    let m = r.matrix();
    let mut out = [C::new(0.0, 0.0); 3];
    for (i, o) in out.iter_mut().enumerate() {
        *o = m[(i, 0)] * v[0] + m[(i, 1)] * v[1] + m[(i, 2)] * v[2];
    }
    out
}

fn reference_spatial(h: Helicity) -> [C; 3] {
    let s = FRAC_1_SQRT_2;
    match h {
        Helicity::Plus => [C::new(-s, 0.0), C::new(0.0, -s), C::new(0.0, 0.0)],
        Helicity::Minus => [C::new(s, 0.0), C::new(0.0, -s), C::new(0.0, 0.0)],
    }
}

/// Polarization at the reference momentum `(1, 0, 0, 1)`.
pub fn reference_polarization(lambda: i32) -> Result<PolarizationVector> {
    let h = Helicity::try_from(lambda)?;
    let e = reference_spatial(h);
    Ok(PolarizationVector { components: [C::new(0.0, 0.0), e[0], e[1], e[2]], k: FourVector::reference(1.0), helicity: h })
}

/// `eps(k, lambda) = R0[k] eps_ref(lambda)`, with zero time component.
pub fn polarization_vector(k: FourVector, h: Helicity) -> Result<PolarizationVector> {
    if !k.is_massless_positive() {
        return Err(invalid(format!("momentum {:?} is not a positive-energy null vector", k.to_array())));
    }
    Ok(polarization_unchecked(k, h))
}

pub(crate) fn polarization_unchecked(k: FourVector, h: Helicity) -> PolarizationVector {
    let e = polarization_spatial(k.spatial(), h);
    PolarizationVector { components: [C::new(0.0, 0.0), e[0], e[1], e[2]], k, helicity: h }
}

/// Spatial polarization for direction `k_hat` (any positive multiple works).
pub fn polarization_spatial(k_hat: ThreeVector, h: Helicity) -> [C; 3] {
    rotate_complex(&standard_rotation(k_hat), reference_spatial(h))
}

/// Antisymmetric tensor `k^mu eps^nu - k^nu eps^mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FieldTensorCoefficient {
    pub t: Matrix4<C>,
    pub k: FourVector,
    pub helicity: Helicity,
}

impl FieldTensorCoefficient {
    pub fn from_vectors(k: FourVector, eps: [C; 4], helicity: Helicity) -> Self {
        let kk = k.to_array();
        let t = Matrix4::from_fn(|m, n| eps[n] * kk[m] - eps[m] * kk[n]);
        FieldTensorCoefficient { t, k, helicity }
    }

    /// `E_i = T^{i0}`.
    pub fn electric(&self) -> [C; 3] {
        [self.t[(1, 0)], self.t[(2, 0)], self.t[(3, 0)]]
    }

    /// `B_1 = -T^{23}`, `B_2 = -T^{31}`, `B_3 = -T^{12}`.
    pub fn magnetic(&self) -> [C; 3] {
        [-self.t[(2, 3)], -self.t[(3, 1)], -self.t[(1, 2)]]
    }

    /// `L T L^T` for a real Lorentz matrix.
    pub fn transformed(&self, l: &LorentzTransform) -> Matrix4<C> {
        let m = l.matrix().0.map(|x| C::new(x, 0.0));
        m * self.t * m.transpose()
    }
}

pub fn field_tensor_coefficient(k: FourVector, h: Helicity) -> Result<FieldTensorCoefficient> {
    let eps = polarization_vector(k, h)?;
    Ok(FieldTensorCoefficient::from_vectors(k, eps.components, h))
}

fn max_abs(v: impl IntoIterator<Item = C>) -> f64 {
    v.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `max |R eps(k) - eps(Rk) exp(-i lambda w(R, k))|`.
pub fn check_rotation_covariance(r: &Rotation, k: FourVector, h: Helicity) -> Result<f64> {
    let eps = polarization_vector(k, h)?;
    let lhs = rotate_complex(r, eps.spatial());
    let rk = FourVector::massless(r.apply(k.spatial()));
    let rhs = polarization_vector(rk, h)?;
    let phase = wigner_rotation_angle(r, k)?.helicity_factor(h.value());
    let rs = rhs.spatial();
    Ok(max_abs((0..3).map(|i| lhs[i] - rs[i] * phase)))
}

/// `max |L T(k) L^T - T(Lk) exp(-i lambda w(L, k))|`, relative to `max |T(Lk)|`.
pub fn check_boost_tensor_covariance(l: &LorentzTransform, k: FourVector, h: Helicity) -> Result<f64> {
    let t = field_tensor_coefficient(k, h)?;
    let lhs = t.transformed(l);
    let lk = FourVector::massless(l.apply(k).spatial());
    let rhs = field_tensor_coefficient(lk, h)?;
    let phase = wigner_angle(l, k)?.helicity_factor(h.value());
    let scale = max_abs(rhs.t.iter().copied()).max(f64::MIN_POSITIVE);
    Ok(max_abs((lhs - rhs.t * phase).iter().copied()) / scale)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::minkowski_dot;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Closed-form positive-helicity vector in terms of the half-angle weights.
    fn explicit_plus(theta: f64, phi: f64) -> [C; 3] {
        let c2 = (0.5 * theta).cos().powi(2);
        let s2 = (0.5 * theta).sin().powi(2);
        let e2 = C::from_polar(1.0, 2.0 * phi);
        let e1 = C::from_polar(1.0, phi);
        let tilde = [c2 - e2 * s2, C::i() * (e2 * s2 + c2), -e1 * theta.sin()];
        tilde.map(|z| -z * FRAC_1_SQRT_2)
    }

    fn dir(theta: f64, phi: f64) -> ThreeVector {
        ThreeVector::from_spherical(theta, phi)
    }

    #[test]
    fn reference_vectors() {
        let s = FRAC_1_SQRT_2;
        let p = reference_polarization(1).unwrap();
        assert_eq!(p.components, [C::new(0.0, 0.0), C::new(-s, 0.0), C::new(0.0, -s), C::new(0.0, 0.0)]);
        let m = reference_polarization(-1).unwrap();
        assert_eq!(m.components, [C::new(0.0, 0.0), C::new(s, 0.0), C::new(0.0, -s), C::new(0.0, 0.0)]);
        assert_eq!(p.lorentz_condition(), C::new(0.0, 0.0));
        assert_eq!(m.lorentz_condition(), C::new(0.0, 0.0));
        assert!(reference_polarization(0).is_err());
        assert!(reference_polarization(2).is_err());
        // The real part of the Lorentz condition with the reference momentum.
        let kr = FourVector::reference(1.0);
        let re = FourVector::new(p.components[0].re, p.components[1].re, p.components[2].re, p.components[3].re);
        assert_eq!(minkowski_dot(kr, re), 0.0);
    }

    #[test]
    fn vector_along_x() {
        let e = polarization_vector(FourVector::massless(ThreeVector::X), Helicity::Plus).unwrap().spatial();
        let s = FRAC_1_SQRT_2;
        let expected = [C::new(0.0, 0.0), C::new(0.0, -s), C::new(s, 0.0)];
        assert!(max_abs((0..3).map(|i| e[i] - expected[i])) < 1e-15);
        let z = polarization_vector(FourVector::reference(3.0), Helicity::Minus).unwrap();
        assert_eq!(z.spatial(), reference_spatial(Helicity::Minus));
    }

    #[test]
    fn tensor_on_axis_by_hand() {
        let kappa = 2.5;
        let t = field_tensor_coefficient(FourVector::reference(kappa), Helicity::Plus).unwrap();
        let s = FRAC_1_SQRT_2;
        // T^{10} = k^1 eps^0 - k^0 eps^1 = kappa / sqrt2
        assert!((t.t[(1, 0)] - C::new(kappa * s, 0.0)).norm() < 1e-15);
        // T^{20} = -kappa * (-i/sqrt2)
        assert!((t.t[(2, 0)] - C::new(0.0, kappa * s)).norm() < 1e-15);
        // T^{13} = k^1 eps^3 - k^3 eps^1 = kappa / sqrt2
        assert!((t.t[(1, 3)] - C::new(kappa * s, 0.0)).norm() < 1e-15);
        assert_eq!(t.t[(0, 3)], C::new(0.0, 0.0));
        // Magnetic field is k_hat x E for a plane wave; for positive helicity B = -i E.
        let (e, b) = (t.electric(), t.magnetic());
        for i in 0..3 {
            assert!((b[i] + C::i() * e[i]).norm() < 1e-15);
        }
    }

    #[test]
    fn rotation_about_momentum_is_a_phase() {
        let k = dir(1.0, 0.4);
        let om = 0.9;
        let r = Rotation::new(k, om).unwrap();
        for h in Helicity::BOTH {
            let e = polarization_spatial(k, h);
            let re = rotate_complex(&r, e);
            let ph = C::from_polar(1.0, -h.as_f64() * om);
            assert!(max_abs((0..3).map(|i| re[i] - e[i] * ph)) < 1e-14);
            assert!(check_rotation_covariance(&r, FourVector::massless(k), h).unwrap() < 1e-12);
        }
        assert_eq!(check_rotation_covariance(&Rotation::identity(), FourVector::massless(k), Helicity::Plus).unwrap(), 0.0);
    }

    #[test]
    fn collinear_boost_rescales_tensor() {
        let k = FourVector::massless(dir(2.0, -1.0) * 1.5);
        let l = LorentzTransform::boost(dir(2.0, -1.0) * 0.8);
        assert!(check_boost_tensor_covariance(&l, k, Helicity::Minus).unwrap() < 1e-12);
        assert_eq!(check_boost_tensor_covariance(&LorentzTransform::boost(ThreeVector::ZERO), k, Helicity::Plus).unwrap(), 0.0);
    }

    #[test]
    fn south_pole_uses_half_turn_about_y() {
        let e = polarization_spatial(-ThreeVector::Z, Helicity::Plus);
        let x = explicit_plus(PI, 0.0);
        assert!(max_abs((0..3).map(|i| e[i] - x[i])) < 1e-15);
        let e = polarization_spatial(ThreeVector::Y, Helicity::Plus);
        let x = explicit_plus(FRAC_PI_2, FRAC_PI_2);
        assert!(max_abs((0..3).map(|i| e[i] - x[i])) < 1e-15);
    }

    fn arb_dir() -> impl Strategy<Value = ThreeVector> {
        (-1.0f64..1.0, 0.0..2.0 * PI).prop_map(|(c, p)| dir(c.acos(), p))
    }

    fn arb_helicity() -> impl Strategy<Value = Helicity> {
        prop_oneof![Just(Helicity::Plus), Just(Helicity::Minus)]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn explicit_form_and_basic_identities(k in arb_dir(), w in 0.1f64..10.0) {
            let kk = FourVector::massless(k * w);
            let p = polarization_vector(kk, Helicity::Plus).unwrap();
            let m = polarization_vector(kk, Helicity::Minus).unwrap();
            let x = explicit_plus(k.polar(), k.azimuth());
            let ps = p.spatial();
            let ms = m.spatial();
            prop_assert!(max_abs((0..3).map(|i| ps[i] - x[i])) < 1e-14);
            prop_assert!(max_abs((0..3).map(|i| ms[i] + ps[i].conj())) < 1e-15);
            prop_assert!(p.lorentz_condition().norm() < 1e-12 * w);
            prop_assert!(m.lorentz_condition().norm() < 1e-12 * w);
            prop_assert!((p.spatial_norm_sqr() - 1.0).abs() < 1e-12);
            let cross: C = (0..3).map(|i| ps[i].conj() * ms[i]).sum();
            prop_assert!(cross.norm() < 1e-12);
        }

        #[test]
        fn tensor_gauge_invariance(k in arb_dir(), h in arb_helicity(), re in -5.0f64..5.0, im in -5.0f64..5.0) {
            let kk = FourVector::massless(k * 1.7);
            let p = polarization_vector(kk, h).unwrap();
            let c = C::new(re, im);
            let ka = kk.to_array();
            let shifted: [C; 4] = std::array::from_fn(|i| p.components[i] + c * ka[i]);
            let t0 = FieldTensorCoefficient::from_vectors(kk, p.components, h);
            let t1 = FieldTensorCoefficient::from_vectors(kk, shifted, h);
            prop_assert!(max_abs((t0.t - t1.t).iter().copied()) < 1e-12 * (1.0 + c.norm()));
            prop_assert_eq!(t0.t, -t0.t.transpose());
        }

        #[test]
        fn rotation_covariance(axis in arb_dir(), om in 0.0f64..(2.0 * PI), k in arb_dir(), h in arb_helicity()) {
            let r = Rotation::new(axis, om).unwrap();
            prop_assume!(r.apply(k).z > -1.0 + 1e-6);
            prop_assert!(check_rotation_covariance(&r, FourVector::massless(k), h).unwrap() < 1e-10);
        }

        #[test]
        fn boost_tensor_covariance(n in arb_dir(), z in 0.0f64..3.0, axis in arb_dir(), om in 0.0f64..(2.0 * PI), k in arb_dir(), h in arb_helicity()) {
            let l = LorentzTransform::new(Rotation::new(axis, om).unwrap(), n * z);
            let kk = FourVector::massless(k);
            let out = l.apply(kk).spatial().normalized().unwrap();
            let mid = LorentzTransform::boost(n * z).apply(kk).spatial().normalized().unwrap();
            prop_assume!(out.z > -1.0 + 1e-6 && mid.z > -1.0 + 1e-6);
            prop_assert!(check_boost_tensor_covariance(&l, kk, h).unwrap() < 1e-9);
        }
    }
}
