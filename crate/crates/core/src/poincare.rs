//! Massless little group and Wigner phases.
//!
//! States of general momentum are built from the reference momentum
//! `k_R = (kappa, 0, 0, kappa)` by a z boost to the target energy followed by
//! the standard rotation `R0[k] = Rz(phi) Ry(theta) Rz(-phi)`. A Lorentz
//! transformation then acts on a helicity state as a phase `exp(-i lambda w)`;
//! this module computes `w` in closed form for rotations and boosts.
//!
//! Pole convention: `R0[z] = 1` (polar angle below `1e-12`) and
//! `R0[-z] = Ry(pi)`, i.e. the azimuth is taken as zero on the axis.

use std::f64::consts::PI;

use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spacetime::{
    boost_matrix, d_half_zero, su2_of_rotation, FourVector, LorentzMatrix, LorentzTransform, Rotation,
    ThreeVector,
};

/// Below this modulus the closed-form ratio is treated as 0/0.
pub const DEGENERATE_MODULUS: f64 = 1e-14;

/// Reference energy of `k_R`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReferenceFrame {
    kappa: f64,
}

impl ReferenceFrame {
    pub fn new(kappa: f64) -> Result<Self> {
        if kappa > 0.0 && kappa.is_finite() {
            Ok(ReferenceFrame { kappa })
        } else {
            Err(invalid(format!("reference energy must be positive, got {kappa}")))
        }
    }

    pub fn kappa(&self) -> f64 {
        self.kappa
    }

    pub fn momentum(&self) -> FourVector {
        FourVector::reference(self.kappa)
    }
}

impl Default for ReferenceFrame {
    fn default() -> Self {
        ReferenceFrame { kappa: 1.0 }
    }
}

/// Little-group translation parameter of an IBR.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct IbrParameter {
    pub alpha_x: f64,
    pub alpha_y: f64,
}

impl IbrParameter {
    pub fn new(alpha_x: f64, alpha_y: f64) -> Self {
        IbrParameter { alpha_x, alpha_y }
    }

    /// `alpha = -2 cot(theta_B) (cos phi_B, sin phi_B)`.
    pub fn from_boost_angles(theta_b: f64, phi_b: f64) -> Result<Self> {
        check_boost_polar(theta_b)?;
        let a = -2.0 / theta_b.tan();
        Ok(IbrParameter::new(a * phi_b.cos(), a * phi_b.sin()))
    }

    pub fn norm_sqr(&self) -> f64 {
        self.alpha_x * self.alpha_x + self.alpha_y * self.alpha_y
    }

    /// Rotates the parameter about z by `gamma`.
    pub fn rotated(&self, gamma: f64) -> Self {
        let (s, c) = gamma.sin_cos();
        IbrParameter::new(c * self.alpha_x - s * self.alpha_y, s * self.alpha_x + c * self.alpha_y)
    }
}

impl std::ops::Add for IbrParameter {
    type Output = IbrParameter;
    fn add(self, o: IbrParameter) -> IbrParameter {
        IbrParameter::new(self.alpha_x + o.alpha_x, self.alpha_y + o.alpha_y)
    }
}

/// A Wigner angle reduced to `(-pi, pi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WignerPhase {
    w: f64,
}

impl WignerPhase {
    pub const ZERO: WignerPhase = WignerPhase { w: 0.0 };

    pub fn from_angle(w: f64) -> Self {
        WignerPhase { w: reduce_angle(w) }
    }

    /// From the unit complex number `exp(-i w)`.
    pub fn from_phase_factor(z: Complex64) -> Self {
        WignerPhase::from_angle(-z.arg())
    }

    pub fn angle(&self) -> f64 {
        self.w
    }

    /// `exp(-i w)`.
    pub fn phase_factor(&self) -> Complex64 {
        Complex64::from_polar(1.0, -self.w)
    }

    /// `exp(-i lambda w)`.
    pub fn helicity_factor(&self, lambda: i32) -> Complex64 {
        Complex64::from_polar(1.0, -(lambda as f64) * self.w)
    }

    /// Distance on the circle, in `[0, pi]`.
    pub fn distance(&self, other: &WignerPhase) -> f64 {
        reduce_angle(self.w - other.w).abs()
    }
}

impl std::ops::Add for WignerPhase {
    type Output = WignerPhase;
    fn add(self, o: WignerPhase) -> WignerPhase {
        WignerPhase::from_angle(self.w + o.w)
    }
}

/// Reduces an angle to `(-pi, pi]`.
pub fn reduce_angle(a: f64) -> f64 {
    let mut r = a.rem_euclid(2.0 * PI);
    if r > PI {
        r -= 2.0 * PI;
    }
    if r <= -PI {
        r += 2.0 * PI;
    }
    r
}

fn check_boost_polar(theta_b: f64) -> Result<()> {
    if theta_b > 0.0 && theta_b < PI {
        Ok(())
    } else {
        Err(invalid(format!("boost polar angle {theta_b} must lie strictly inside (0, pi)")))
    }
}

/// Velocity of the isoenergetic boost with direction angles `(theta_B, phi_B)`.
pub fn iso_boost_velocity(theta_b: f64, phi_b: f64) -> Result<ThreeVector> {
    check_boost_polar(theta_b)?;
    let c = theta_b.cos();
    let speed = -2.0 * c / (1.0 + c * c);
    Ok(ThreeVector::from_spherical(theta_b, phi_b) * speed)
}

/// Rapidity vector of the isoenergetic boost, `2 atanh|cos theta_B|` along the
/// velocity. Avoids the cancellation of `atanh` near unit speed.
pub fn iso_boost_rapidity(theta_b: f64, phi_b: f64) -> Result<ThreeVector> {
    check_boost_polar(theta_b)?;
    let c = theta_b.cos();
    Ok(ThreeVector::from_spherical(theta_b, phi_b) * (-2.0 * c.atanh()))
}

/// Polar angle of `k_R` after the isoenergetic boost, `2 theta_B - pi`.
pub fn iso_final_polar(theta_b: f64) -> Result<f64> {
    check_boost_polar(theta_b)?;
    Ok(2.0 * theta_b - PI)
}

/// The IBR as the product of its isoenergetic boost and the restoring
/// rotation. With right-handed active rotations the restoring rotation is by
/// `+psi` about `u2 = u1 x z` (equivalently `-psi` about `z x u1`).
pub fn ibr_from_boost_angles(theta_b: f64, phi_b: f64) -> Result<LorentzMatrix> {
    let zeta = iso_boost_rapidity(theta_b, phi_b)?;
    let psi = iso_final_polar(theta_b)?;
    let u1 = ThreeVector::new(phi_b.cos(), phi_b.sin(), 0.0);
    let u2 = u1.cross(ThreeVector::Z);
    let rot = Rotation::from_unit_axis(u2, psi);
    Ok(rot.to_lorentz() * boost_matrix(zeta))
}

/// Explicit 4x4 IBR matrix.
pub fn ibr_matrix(a: IbrParameter) -> LorentzMatrix {
    let (ax, ay) = (a.alpha_x, a.alpha_y);
    let h = 0.5 * a.norm_sqr();
    #[rustfmt::skip]
    let m = Matrix4::new(
        1.0 + h, ax,  ay,  -h,
        ax,      1.0, 0.0, -ax,
        ay,      0.0, 1.0, -ay,
        h,       ax,  ay,  1.0 - h,
    );
    LorentzMatrix(m)
}

/// `(L_x, L_y)`, the derivatives of the IBR matrix at `alpha = 0`.
pub fn ibr_generators() -> (Matrix4<f64>, Matrix4<f64>) {
    let mut lx = Matrix4::zeros();
    lx[(0, 1)] = 1.0;
    lx[(1, 0)] = 1.0;
    lx[(1, 3)] = -1.0;
    lx[(3, 1)] = 1.0;
    let mut ly = Matrix4::zeros();
    ly[(0, 2)] = 1.0;
    ly[(2, 0)] = 1.0;
    ly[(2, 3)] = -1.0;
    ly[(3, 2)] = 1.0;
    (lx, ly)
}

/// `R0[k] = Rz(phi) Ry(theta) Rz(-phi)`, mapping z onto `k_hat`.
pub fn standard_rotation(k_hat: ThreeVector) -> Rotation {
    let theta = k_hat.polar();
    if theta < 1e-12 {
        return Rotation::identity();
    }
    let phi = k_hat.azimuth();
    // Same matrix as the Euler product; the axis lies in the xy plane.
    Rotation::from_unit_axis(ThreeVector::new(-phi.sin(), phi.cos(), 0.0), theta)
}

/// Boost along z taking `k_R` with energy `kappa` to energy `omega`.
pub fn z_boost_for_energy(omega: f64, kappa: f64) -> Result<LorentzMatrix> {
    Ok(boost_matrix(z_boost_rapidity(omega, kappa)?))
}

/// Rapidity vector `ln(omega/kappa) z` of [`z_boost_for_energy`].
pub fn z_boost_rapidity(omega: f64, kappa: f64) -> Result<ThreeVector> {
    if !(omega > 0.0 && kappa > 0.0 && omega.is_finite() && kappa.is_finite()) {
        return Err(invalid(format!("energies must be positive, got omega={omega}, kappa={kappa}")));
    }
    Ok(ThreeVector::Z * (omega / kappa).ln())
}

/// The standard boost `L(k) = R0[k] Lz(omega)` as a factorized transform.
pub fn standard_boost(k: FourVector, frame: ReferenceFrame) -> Result<LorentzTransform> {
    let rot = standard_rotation(k.spatial());
    Ok(LorentzTransform::new(rot, z_boost_rapidity(k.t, frame.kappa())?))
}

fn check_massless(k: FourVector) -> Result<()> {
    if k.t.is_finite() && k.spatial().is_finite() && k.is_massless_positive() {
        Ok(())
    } else {
        Err(invalid(format!("momentum {:?} is not a positive-energy null vector", k.to_array())))
    }
}

fn half_angles(k_hat: ThreeVector) -> (f64, f64, Complex64) {
    let theta = k_hat.polar();
    let phi = k_hat.azimuth();
    let (s, c) = (0.5 * theta).sin_cos();
    (c, s, Complex64::from_polar(1.0, phi))
}

fn ratio_phase(num: Complex64, den: Complex64) -> Result<WignerPhase> {
    if num.norm() < DEGENERATE_MODULUS || den.norm() < DEGENERATE_MODULUS {
        return Err(Error::Degenerate(format!(
            "Wigner ratio {num}/{den} has a vanishing factor (transformed momentum on the -z pole)"
        )));
    }
    Ok(WignerPhase::from_phase_factor(num / den))
}

/// Wigner angle of a rotation acting on the massless momentum `k`.
pub fn wigner_rotation_angle(r: &Rotation, k: FourVector) -> Result<WignerPhase> {
    check_massless(k)?;
    if r.angle() == 0.0 {
        return Ok(WignerPhase::ZERO);
    }
    let d = su2_of_rotation(r);
    let (c, s, e) = half_angles(k.spatial());
    let num = d.get(0, 0) * c + d.get(0, 1) * s * e;
    let den = d.get(0, 0).conj() * c + d.get(0, 1).conj() * s * e.conj();
    ratio_phase(num, den)
}

/// Wigner angle of the pure boost with rapidity vector `rapidity`.
pub fn wigner_boost_angle(rapidity: ThreeVector, k: FourVector) -> Result<WignerPhase> {
    check_massless(k)?;
    let z = rapidity.norm();
    if z == 0.0 {
        return Ok(WignerPhase::ZERO);
    }
    let n = rapidity / z;
    let t = (0.5 * z).tanh();
    let (c, s, e) = half_angles(k.spatial());
    let a = (1.0 + t * n.z) * c;
    let num = a + Complex64::new(t * n.x, -t * n.y) * s * e;
    let den = a + Complex64::new(t * n.x, t * n.y) * s * e.conj();
    ratio_phase(num, den)
}

/// Wigner angle of `R B(zeta)`: `w(R, B k) + w(B, k)`.
pub fn wigner_angle(l: &LorentzTransform, k: FourVector) -> Result<WignerPhase> {
    let wb = wigner_boost_angle(l.rapidity, k)?;
    let kb = boost_matrix(l.rapidity).apply(k);
    // Re-project onto the light cone to keep the rotation check tight.
    let kb = FourVector::massless(kb.spatial());
    let wr = wigner_rotation_angle(&l.rotation, kb)?;
    Ok(wr + wb)
}

/// Little-group product `su2(R0[Rk])^-1 su2(R) su2(R0[k])`. It is diagonal,
/// and the ratio of its diagonal entries is `exp(-i w)`. Valid at the pole
/// too, where the closed form reports `Degenerate`.
pub fn wigner_rotation_oracle(r: &Rotation, k: ThreeVector) -> WignerPhase {
    let w = su2_of_rotation(&standard_rotation(r.apply(k)).inverse())
        * su2_of_rotation(r)
        * su2_of_rotation(&standard_rotation(k));
    WignerPhase::from_phase_factor(w.get(0, 0) / w.get(1, 1))
}

/// Product `D(L(Bk))^-1 D(B) D(L(k))` in the (1/2,0) representation for the
/// pure boost `B`. Returns the phase and the off-diagonal magnitude, which
/// must vanish for a little-group element.
pub fn wigner_boost_oracle(rapidity: ThreeVector, k: FourVector) -> Result<(WignerPhase, f64)> {
    check_massless(k)?;
    let frame = ReferenceFrame::new(1.0)?;
    let kp = FourVector::massless(boost_matrix(rapidity).apply(k).spatial());
    let lk = standard_boost(k, frame)?.spinor();
    let lkp = standard_boost(kp, frame)?.spinor();
    let w = lkp.inverse() * d_half_zero(rapidity, &Rotation::identity()) * lk;
    Ok((WignerPhase::from_phase_factor(w.get(0, 0) / w.get(1, 1)), w.get(0, 1).norm()))
}
