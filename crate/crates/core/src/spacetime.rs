//! Minkowski linear algebra, rotations, boosts and the two-dimensional
//! spinor matrices used for Wigner phases.
//!
//! Signature is (+,-,-,-). Four-vectors are stored as `(t, x, y, z)`.
//! Boosts are active: a rapidity `zeta` along `n` maps a particle at rest to
//! one moving with velocity `tanh(zeta) n`.
//!
//! The two-dimensional matrices come in two flavours:
//!
//! * [`su2_of_rotation`] gives `cos(W/2) - i sin(W/2) n.sigma` for a rotation by
//!   `W` about `n`.
//! * [`d_half_zero`] gives the representation in which the little-group
//!   translation of the reference momentum `(k, 0, 0, k)` is lower triangular,
//!   `[[1, 0], [-(a_x + i a_y), 1]]`. This forces the boost factor to be
//!   `exp(-zeta.sigma / 2)`; rotations are represented by `su2_of_rotation`.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use nalgebra::{Matrix2, Matrix3, Matrix4, Vector3, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::tolerances;

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ThreeVector {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl ThreeVector {
    pub const ZERO: ThreeVector = ThreeVector { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: ThreeVector = ThreeVector { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: ThreeVector = ThreeVector { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: ThreeVector = ThreeVector { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        ThreeVector { x, y, z }
    }

    /// Unit vector with polar angle `theta` and azimuth `phi`.
    pub fn from_spherical(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        ThreeVector::new(st * cp, st * sp, ct)
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        ThreeVector::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, other: ThreeVector) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sqr(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Unit vector along `self`; `None` for the zero vector.
    pub fn normalized(self) -> Option<ThreeVector> {
        let n = self.norm();
        if n > 0.0 && n.is_finite() {
            Some(self / n)
        } else {
            None
        }
    }

    pub fn is_unit(self) -> bool {
        (self.norm() - 1.0).abs() <= tolerances::UNIT_VECTOR
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Polar angle in `[0, pi]`.
    pub fn polar(self) -> f64 {
        let rho = (self.x * self.x + self.y * self.y).sqrt();
        rho.atan2(self.z)
    }

    /// Azimuth in `(-pi, pi]`; zero on the z axis.
    pub fn azimuth(self) -> f64 {
        if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        }
    }

    pub fn max_abs_diff(self, o: ThreeVector) -> f64 {
        (self.x - o.x).abs().max((self.y - o.y).abs()).max((self.z - o.z).abs())
    }

    pub(crate) fn to_na(self) -> Vector3<f64> {
        Vector3::new(self.x, self.y, self.z)
    }

    pub(crate) fn from_na(v: Vector3<f64>) -> Self {
        ThreeVector::new(v[0], v[1], v[2])
    }
}

impl Add for ThreeVector {
    type Output = ThreeVector;
    fn add(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for ThreeVector {
    fn add_assign(&mut self, o: ThreeVector) {
        *self = *self + o;
    }
}

impl Sub for ThreeVector {
    type Output = ThreeVector;
    fn sub(self, o: ThreeVector) -> ThreeVector {
        ThreeVector::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for ThreeVector {
    type Output = ThreeVector;
    fn neg(self) -> ThreeVector {
        ThreeVector::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for ThreeVector {
    type Output = ThreeVector;
    fn mul(self, s: f64) -> ThreeVector {
        ThreeVector::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<ThreeVector> for f64 {
    type Output = ThreeVector;
    fn mul(self, v: ThreeVector) -> ThreeVector {
        v * self
    }
}

impl Div<f64> for ThreeVector {
    type Output = ThreeVector;
    fn div(self, s: f64) -> ThreeVector {
        ThreeVector::new(self.x / s, self.y / s, self.z / s)
    }
}

impl fmt::Display for ThreeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A contravariant four-vector `(t, x, y, z)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        FourVector { t, x, y, z }
    }

    pub fn from_parts(t: f64, s: ThreeVector) -> Self {
        FourVector::new(t, s.x, s.y, s.z)
    }

    /// Positive-energy null vector with spatial part `k`.
    pub fn massless(k: ThreeVector) -> Self {
        FourVector::from_parts(k.norm(), k)
    }

    /// The reference momentum `(kappa, 0, 0, kappa)`.
    pub fn reference(kappa: f64) -> Self {
        FourVector::new(kappa, 0.0, 0.0, kappa)
    }

    pub fn spatial(self) -> ThreeVector {
        ThreeVector::new(self.x, self.y, self.z)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.t, self.x, self.y, self.z]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        FourVector::new(a[0], a[1], a[2], a[3])
    }

    pub fn dot(self, o: FourVector) -> f64 {
        minkowski_dot(self, o)
    }

    /// `|k.k| <= 1e-10 (k^0)^2` and `k^0 > 0`.
    pub fn is_massless_positive(self) -> bool {
        self.t > 0.0 && self.dot(self).abs() <= tolerances::MASSLESS_RELATIVE * self.t * self.t
    }

    pub fn max_abs_diff(self, o: FourVector) -> f64 {
        (self.t - o.t).abs().max(self.spatial().max_abs_diff(o.spatial()))
    }

    pub(crate) fn to_na(self) -> Vector4<f64> {
        Vector4::new(self.t, self.x, self.y, self.z)
    }

    pub(crate) fn from_na(v: Vector4<f64>) -> Self {
        FourVector::new(v[0], v[1], v[2], v[3])
    }
}

impl Add for FourVector {
    type Output = FourVector;
    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for FourVector {
    type Output = FourVector;
    fn sub(self, o: FourVector) -> FourVector {
        FourVector::new(self.t - o.t, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for FourVector {
    type Output = FourVector;
    fn mul(self, s: f64) -> FourVector {
        FourVector::new(self.t * s, self.x * s, self.y * s, self.z * s)
    }
}

/// `a^0 b^0 - a.b`
pub fn minkowski_dot(a: FourVector, b: FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

/// The metric tensor `diag(1, -1, -1, -1)`.
pub fn metric() -> Matrix4<f64> {
    Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0))
}

fn cross_matrix(n: ThreeVector) -> Matrix3<f64> {
    Matrix3::new(0.0, -n.z, n.y, n.z, 0.0, -n.x, -n.y, n.x, 0.0)
}

/// A proper rotation, stored both as axis-angle and as its 3x3 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    axis: ThreeVector,
    angle: f64,
    matrix: Matrix3<f64>,
}

impl Rotation {
    pub fn identity() -> Self {
        Rotation { axis: ThreeVector::Z, angle: 0.0, matrix: Matrix3::identity() }
    }

    /// Right-handed rotation by `angle` about the unit vector `axis`.
    pub fn new(axis: ThreeVector, angle: f64) -> Result<Self> {
        if !axis.is_finite() || !angle.is_finite() {
            return Err(invalid("rotation axis and angle must be finite"));
        }
        if !axis.is_unit() {
            return Err(invalid(format!("rotation axis {axis} is not a unit vector")));
        }
        Ok(Self::from_unit_axis(axis, angle))
    }

    /// Rodrigues form; `axis` is trusted to be unit length.
    pub(crate) fn from_unit_axis(axis: ThreeVector, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let n = axis.to_na();
        let matrix = Matrix3::identity() * c + n * n.transpose() * (1.0 - c) + cross_matrix(axis) * s;
        Rotation { axis, angle, matrix }
    }

    pub fn about_x(angle: f64) -> Self {
        Self::from_unit_axis(ThreeVector::X, angle)
    }

    pub fn about_y(angle: f64) -> Self {
        Self::from_unit_axis(ThreeVector::Y, angle)
    }

    pub fn about_z(angle: f64) -> Self {
        Self::from_unit_axis(ThreeVector::Z, angle)
    }

    /// Rebuilds axis and angle from an orthogonal matrix. Uses the trace
    /// formula, switching to the largest-diagonal column near `angle = pi`.
    pub fn from_matrix(m: Matrix3<f64>) -> Self {
        let cos_angle = ((m.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
        let anti = ThreeVector::new(m[(2, 1)] - m[(1, 2)], m[(0, 2)] - m[(2, 0)], m[(1, 0)] - m[(0, 1)]);
        let angle = (0.5 * anti.norm()).atan2(cos_angle);
        let axis = if angle < 1e-12 {
            ThreeVector::Z
        } else if PI - angle > 1e-6 {
            (anti / (2.0 * angle.sin())).normalized().unwrap_or(ThreeVector::Z)
        } else {
            // Symmetric part minus cos(angle) is (1 - cos) n n^T; take its
            // column with the largest diagonal entry.
            let sym = |r: usize, c: usize| {
                let d = if r == c { 2.0 * cos_angle } else { 0.0 };
                m[(r, c)] + m[(c, r)] - d
            };
            let d = [sym(0, 0), sym(1, 1), sym(2, 2)];
            let i = (0..3).max_by(|&a, &b| d[a].total_cmp(&d[b])).unwrap_or(0);
            let col = ThreeVector::new(sym(0, i), sym(1, i), sym(2, i));
            let mut n = col.normalized().unwrap_or(ThreeVector::Z);
            if n.dot(anti) < 0.0 {
                n = -n;
            }
            n
        };
        Rotation { axis, angle, matrix: m }
    }

    pub fn axis(&self) -> ThreeVector {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.matrix
    }

    pub fn apply(&self, v: ThreeVector) -> ThreeVector {
        ThreeVector::from_na(self.matrix * v.to_na())
    }

    pub fn inverse(&self) -> Rotation {
        Rotation { axis: self.axis, angle: -self.angle, matrix: self.matrix.transpose() }
    }

    /// `self * other` (apply `other` first).
    pub fn compose(&self, other: &Rotation) -> Rotation {
        Rotation::from_matrix(self.matrix * other.matrix)
    }

    /// `max |R R^T - 1|` and `|det R - 1|`, whichever is larger.
    pub fn orthogonality_defect(&self) -> f64 {
        let e = self.matrix * self.matrix.transpose() - Matrix3::identity();
        e.amax().max((self.matrix.determinant() - 1.0).abs())
    }

    pub fn to_lorentz(&self) -> LorentzMatrix {
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<3, 3>(1, 1).copy_from(&self.matrix);
        LorentzMatrix(m)
    }
}

impl Mul for Rotation {
    type Output = Rotation;
    fn mul(self, o: Rotation) -> Rotation {
        self.compose(&o)
    }
}

/// A 4x4 real matrix acting on contravariant four-vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(pub Matrix4<f64>);

impl LorentzMatrix {
    pub fn identity() -> Self {
        LorentzMatrix(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        FourVector::from_na(self.0 * v.to_na())
    }

    /// `g L^T g`, exact for genuine Lorentz matrices.
    pub fn inverse(&self) -> LorentzMatrix {
        let g = metric();
        LorentzMatrix(g * self.0.transpose() * g)
    }

    pub fn transpose(&self) -> LorentzMatrix {
        LorentzMatrix(self.0.transpose())
    }

    /// `max |L^T g L - g|`.
    pub fn metric_defect(&self) -> f64 {
        let g = metric();
        (self.0.transpose() * g * self.0 - g).amax()
    }

    pub fn max_abs_diff(&self, o: &LorentzMatrix) -> f64 {
        (self.0 - o.0).amax()
    }
}

impl Mul for LorentzMatrix {
    type Output = LorentzMatrix;
    fn mul(self, o: LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * o.0)
    }
}

/// Pure boost with rapidity vector `zeta` (velocity `tanh|zeta| zeta_hat`).
pub fn boost_matrix(rapidity: ThreeVector) -> LorentzMatrix {
    let z = rapidity.norm();
    if z == 0.0 {
        return LorentzMatrix::identity();
    }
    let n = rapidity / z;
    let (ch, sh) = (z.cosh(), z.sinh());
    let nv = n.to_na();
    let mut m = Matrix4::zeros();
    m[(0, 0)] = ch;
    for i in 0..3 {
        m[(0, i + 1)] = sh * nv[i];
        m[(i + 1, 0)] = sh * nv[i];
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[(i + 1, j + 1)] = delta + (ch - 1.0) * nv[i] * nv[j];
        }
    }
    LorentzMatrix(m)
}

/// Rapidity vector for a velocity `beta` with `|beta| < 1`.
pub fn rapidity_from_velocity(beta: ThreeVector) -> Result<ThreeVector> {
    let b = beta.norm();
    if !(b < 1.0) {
        return Err(invalid(format!("speed {b} is not below 1")));
    }
    Ok(match beta.normalized() {
        Some(n) => n * b.atanh(),
        None => ThreeVector::ZERO,
    })
}

/// A Lorentz transformation factorized as `R * B(zeta)` (boost first).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzTransform {
    pub rotation: Rotation,
    pub rapidity: ThreeVector,
}

impl LorentzTransform {
    pub fn new(rotation: Rotation, rapidity: ThreeVector) -> Self {
        LorentzTransform { rotation, rapidity }
    }

    pub fn boost(rapidity: ThreeVector) -> Self {
        LorentzTransform { rotation: Rotation::identity(), rapidity }
    }

    pub fn rotation(rotation: Rotation) -> Self {
        LorentzTransform { rotation, rapidity: ThreeVector::ZERO }
    }

    pub fn matrix(&self) -> LorentzMatrix {
        self.rotation.to_lorentz() * boost_matrix(self.rapidity)
    }

    pub fn apply(&self, v: FourVector) -> FourVector {
        self.matrix().apply(v)
    }

    /// `(R B(zeta))^-1 = R^-1 B(-R zeta)`.
    pub fn inverse(&self) -> LorentzTransform {
        LorentzTransform {
            rotation: self.rotation.inverse(),
            rapidity: -self.rotation.apply(self.rapidity),
        }
    }

    pub fn spinor(&self) -> SpinorMatrix {
        d_half_zero(self.rapidity, &self.rotation)
    }
}

/// A 2x2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinorMatrix(pub Matrix2<Complex64>);

impl SpinorMatrix {
    pub fn identity() -> Self {
        SpinorMatrix(Matrix2::identity())
    }

    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        SpinorMatrix(Matrix2::new(a, b, c, d))
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)]
    }

    /// Inverse of a unimodular matrix (`det = 1`) via the adjugate.
    pub fn inverse(&self) -> SpinorMatrix {
        let m = &self.0;
        let d = self.det();
        SpinorMatrix(Matrix2::new(m[(1, 1)] / d, -m[(0, 1)] / d, -m[(1, 0)] / d, m[(0, 0)] / d))
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [m[(0, 0)] * v[0] + m[(0, 1)] * v[1], m[(1, 0)] * v[0] + m[(1, 1)] * v[1]]
    }

    /// `max |U U^dagger - 1|`.
    pub fn unitarity_defect(&self) -> f64 {
        let e = self.0 * self.0.adjoint() - Matrix2::identity();
        e.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, o: &SpinorMatrix) -> f64 {
        (self.0 - o.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

impl Mul for SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, o: SpinorMatrix) -> SpinorMatrix {
        SpinorMatrix(self.0 * o.0)
    }
}

/// `a0 * 1 + a.sigma` with complex coefficients.
fn pauli_combination(a0: Complex64, a: [Complex64; 3]) -> SpinorMatrix {
    let i = Complex64::i();
    SpinorMatrix::new(a0 + a[2], a[0] - i * a[1], a[0] + i * a[1], a0 - a[2])
}

/// `cos(W/2) - i sin(W/2) n.sigma` for the rotation's stored axis and angle.
pub fn su2_of_rotation(r: &Rotation) -> SpinorMatrix {
    let half = 0.5 * r.angle();
    let (s, c) = half.sin_cos();
    let n = r.axis();
    let mi = Complex64::new(0.0, -s);
    pauli_combination(Complex64::new(c, 0.0), [mi * n.x, mi * n.y, mi * n.z])
}

/// Boost factor `exp(-zeta.sigma / 2)` of the left-handed spinor representation.
pub fn spinor_boost(rapidity: ThreeVector) -> SpinorMatrix {
    let z = rapidity.norm();
    if z == 0.0 {
        return SpinorMatrix::identity();
    }
    let n = rapidity / z;
    let (ch, sh) = ((0.5 * z).cosh(), (0.5 * z).sinh());
    let c = Complex64::new(-sh, 0.0);
    pauli_combination(Complex64::new(ch, 0.0), [c * n.x, c * n.y, c * n.z])
}

/// Representation matrix of `R * B(zeta)`.
pub fn d_half_zero(rapidity: ThreeVector, rotation: &Rotation) -> SpinorMatrix {
    su2_of_rotation(rotation) * spinor_boost(rapidity)
}
