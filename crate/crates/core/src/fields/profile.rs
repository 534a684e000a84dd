//! Dimensionless field profiles of the spherical Gaussian state at `t = 0`.
//!
//! `E_i(0, sigma_x rho u_j) = P e_i(rho_j)` and likewise for `b`, with
//! `P = (16 pi)^{-1/2} sqrt(sigma_k) (2 pi sigma_x^2)^{-3/4}`.
//!
//! Two independent routes:
//! - reduced: after the azimuthal integral, one or two dimensional Bessel
//!   kernel integrals in `kappa = k / sigma_k`;
//! - general: the full three-dimensional mode sum divided by `P`.
//!
//! The reduced kernels follow from the azimuthal Fourier modes of the
//! positive-helicity polarization `eps = -e~/sqrt 2`,
//! `e~ = (C - S e^{2i phi}, i (C + S e^{2i phi}), -sin(theta) e^{i phi})`
//! with `C = cos^2(theta/2)`, `S = sin^2(theta/2)`, and `b = -i e` per mode.
//! With `v = kappa rho sin(theta) / 2` and `u = kappa rho / 2`:
//!
//! | axis | nonzero components |
//! |------|--------------------|
//! | x    | `e_x: C J0 + S J2`, `b_y: C J0 - S J2`, `b_z: -2 j1(u)` |
//! | y    | `e_x: C J0 - S J2`, `e_z: 2 j1(u)`, `b_y: C J0 + S J2` |
//! | z    | `e_x: j0(u)`, `e_y: -j1(u)`, `b_x: j1(u)`, `b_y: j0(u)` |
//!
//! all under `int dkappa kappa^{5/2} e^{-kappa^2/4}` (and `int sin(theta)
//! dtheta` for the two-dimensional kernels). `C J0 + S J2` is evaluated in
//! the equivalent form `2 C J1(v)/v - J2(v) cos(theta)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::modes::{FieldEvaluator, Kernel};
use crate::error::{invalid, Error, Result};
use crate::numerics::{bessel_j0123, gauss_legendre, j1_over_x, radial_rule, IntegrationResult, QuadratureSpec};
use crate::numerics::{spherical_j01, QuadValue};
use crate::spacetime::{FourVector, ThreeVector};
use crate::wavepacket::gaussian_spherical_state;

/// Field component `e_x .. b_z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Component {
    Ex,
    Ey,
    Ez,
    Bx,
    By,
    Bz,
}

impl Component {
    pub const ALL: [Component; 6] = [Component::Ex, Component::Ey, Component::Ez, Component::Bx, Component::By, Component::Bz];

    /// Slot in `[E_x, E_y, E_z, B_x, B_y, B_z]`.
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["ex", "ey", "ez", "bx", "by", "bz"][self.index()]
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Component {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| *c != '_').collect::<String>().to_ascii_lowercase();
        Component::ALL
            .into_iter()
            .find(|c| c.name() == t)
            .ok_or_else(|| invalid(format!("unknown component '{s}' (expected ex, ey, ez, bx, by, bz)")))
    }
}

/// Coordinate axis `rho_j` runs along.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn unit(self) -> ThreeVector {
        match self {
            Axis::X => ThreeVector::X,
            Axis::Y => ThreeVector::Y,
            Axis::Z => ThreeVector::Z,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        }
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "x" => Ok(Axis::X),
            "y" => Ok(Axis::Y),
            "z" => Ok(Axis::Z),
            _ => Err(invalid(format!("unknown axis '{s}' (expected x, y, z)"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileSample {
    pub rho: f64,
    pub value: f64,
    pub error_estimate: f64,
    /// General-path value, when a cross-check was requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub general: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileCurve {
    pub component: Component,
    pub axis: Axis,
    /// Momentum width of the state behind the general path; the reduced path
    /// does not depend on it.
    pub sigma_k: f64,
    pub samples: Vec<ProfileSample>,
}

impl ProfileCurve {
    pub fn rhos(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.rho).collect()
    }

    pub fn values(&self) -> Vec<f64> {
        self.samples.iter().map(|s| s.value).collect()
    }

    /// Largest `|reduced - general|` over cross-checked samples.
    pub fn path_disagreement(&self) -> Option<f64> {
        let d: Vec<f64> = self.samples.iter().filter_map(|s| s.general.map(|g| (g - s.value).abs())).collect();
        if d.is_empty() {
            None
        } else {
            Some(d.into_iter().fold(0.0, f64::max))
        }
    }
}

/// `P = (16 pi)^{-1/2} sqrt(sigma_k) (2 pi sigma_x^2)^{-3/4}`.
pub fn profile_prefactor(sigma_k: f64) -> f64 {
    let sx = 0.5 / sigma_k;
    (16.0 * PI).sqrt().recip() * sigma_k.sqrt() * (2.0 * PI * sx * sx).powf(-0.75)
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Reduced {
    Zero,
    /// `factor int kappa^{5/2} e^{-kappa^2/4} j_n(kappa rho / 2)`.
    Radial { n: usize, factor: f64 },
    /// `int int (C J0(v) + sign S J2(v))`.
    Polar { sign: f64 },
    /// `int int (2 C J1(v)/v - J2(v) cos(theta))`.
    PolarJ1,
}

fn reduced_kernel(c: Component, a: Axis) -> Reduced {
    use Axis::*;
    use Component::*;
    match (a, c) {
        (X, Ex) | (Y, By) => Reduced::PolarJ1,
        (X, By) | (Y, Ex) => Reduced::Polar { sign: -1.0 },
        (X, Bz) => Reduced::Radial { n: 1, factor: -2.0 },
        (Y, Ez) => Reduced::Radial { n: 1, factor: 2.0 },
        (Z, Ex) | (Z, By) => Reduced::Radial { n: 0, factor: 1.0 },
        (Z, Ey) => Reduced::Radial { n: 1, factor: -1.0 },
        (Z, Bx) => Reduced::Radial { n: 1, factor: 1.0 },
        _ => Reduced::Zero,
    }
}

/// Nodes in `s = sqrt(kappa)`: `kappa^{5/2} d kappa = 2 s^6 ds`, which makes
/// the integrand smooth at the origin.
fn s_rule(spec: &QuadratureSpec, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let (s, w) = radial_rule(spec.kappa_max.sqrt(), spec.radial_panels, nodes);
    let w = s.iter().zip(&w).map(|(s, w)| w * 2.0 * s.powi(6) * (-s.powi(4) / 4.0).exp()).collect();
    (s, w)
}

fn polar_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    let r = gauss_legendre(n);
    let h = 0.5 * PI;
    (r.nodes.iter().map(|x| h * (x + 1.0)).collect(), r.weights.iter().map(|w| h * w).collect())
}

fn reduced_sum(kind: Reduced, rho: f64, spec: &QuadratureSpec, radial: usize, polar: usize) -> (f64, f64) {
    let (s, ws) = s_rule(spec, radial);
    let mut sum = 0.0;
    let mut abs = 0.0;
    match kind {
        Reduced::Zero => {}
        Reduced::Radial { n, factor } => {
            for (si, wi) in s.iter().zip(&ws) {
                let u = si * si * rho / 2.0;
                let v = factor * spherical_j01(u)[n] * wi;
                sum += v;
                abs += v.abs();
            }
        }
        Reduced::Polar { .. } | Reduced::PolarJ1 => {
            let (th, wt) = polar_nodes(polar);
            let trig: Vec<(f64, f64, f64, f64)> = th
                .iter()
                .map(|t| {
                    let (st, ct) = t.sin_cos();
                    let c = (0.5 * t).cos().powi(2);
                    (st, ct, c, 1.0 - c)
                })
                .collect();
            for (si, wi) in s.iter().zip(&ws) {
                let kappa = si * si;
                for (&(st, ct, c, sq), w) in trig.iter().zip(&wt) {
                    let v = kappa * rho * st / 2.0;
                    let j = bessel_j0123(v);
                    let kern = match kind {
                        Reduced::Polar { sign } => c * j[0] + sign * sq * j[2],
                        _ => 2.0 * c * j1_over_x(v) - j[2] * ct,
                    };
                    let f = kern * st * w * wi;
                    sum += f;
                    abs += f.abs();
                }
            }
        }
    }
    (sum, abs)
}

/// Reduced-path value of `component(rho_axis)` with its error estimate.
/// Node counts scale with `rho` through [`QuadratureSpec::for_distance`].
pub fn reduced_profile_value(component: Component, axis: Axis, rho: f64, spec: &QuadratureSpec) -> Result<IntegrationResult<f64>> {
    spec.validate()?;
    if !(rho >= 0.0 && rho.is_finite()) {
        return Err(invalid(format!("rho must be finite and non-negative, got {rho}")));
    }
    let kind = reduced_kernel(component, axis);
    let sp = spec.for_distance(rho);
    let (fine, abs) = reduced_sum(kind, rho, &sp, sp.radial_nodes, sp.polar_nodes);
    let (coarse, _) = reduced_sum(kind, rho, &sp, (sp.radial_nodes / 2).max(2), (sp.polar_nodes / 2).max(2));
    let err = fine.distance(&coarse);
    let r = IntegrationResult {
        value: fine,
        error_estimate: err,
        magnitude: abs,
        refinements: 0,
        converged: err <= sp.tolerance * fine.abs().max(abs),
    };
    r.checked(sp.tolerance)
}

fn validate_rhos(rhos: &[f64]) -> Result<()> {
    if rhos.iter().any(|r| !(r.is_finite() && *r >= 0.0)) {
        return Err(invalid("rho values must be finite and non-negative"));
    }
    if rhos.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("rho values must be strictly ascending"));
    }
    Ok(())
}

/// Reduced-path profile on the given `rho` grid.
pub fn profile(component: Component, axis: Axis, rhos: &[f64], spec: &QuadratureSpec) -> Result<ProfileCurve> {
    validate_rhos(rhos)?;
    let samples = rhos
        .par_iter()
        .map(|&rho| {
            let r = reduced_profile_value(component, axis, rho, spec)?;
            Ok(ProfileSample { rho, value: r.value, error_estimate: r.error_estimate, general: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileCurve { component, axis, sigma_k: 1.0, samples })
}

/// General three-dimensional path for the spherical state of width `sigma_k`.
#[derive(Clone, Debug)]
pub struct GeneralProfileEvaluator {
    sigma_k: f64,
    prefactor: f64,
    evaluator: FieldEvaluator,
}

impl GeneralProfileEvaluator {
    /// Mode table resolving distances up to `rho_max`.
    pub fn new(sigma_k: f64, rho_max: f64, spec: &QuadratureSpec) -> Result<Self> {
        let psi = gaussian_spherical_state(sigma_k)?;
        let evaluator = FieldEvaluator::new(&psi, &spec.for_distance(rho_max), Kernel::Tensor)?;
        Ok(GeneralProfileEvaluator { sigma_k, prefactor: profile_prefactor(sigma_k), evaluator })
    }

    /// All six `e_i(rho_j)`, `b_i(rho_j)` at one point and the largest error.
    pub fn components(&self, axis: Axis, rho: f64) -> Result<([f64; 6], f64)> {
        let x = axis.unit() * (rho * 0.5 / self.sigma_k);
        let f = self.evaluator.field(FourVector::from_parts(0.0, x))?;
        Ok((f.components().map(|v| v / self.prefactor), f.error_estimate / self.prefactor))
    }

    pub fn sigma_k(&self) -> f64 {
        self.sigma_k
    }
}

/// General-path profile.
pub fn profile_general(
    component: Component,
    axis: Axis,
    rhos: &[f64],
    sigma_k: f64,
    spec: &QuadratureSpec,
) -> Result<ProfileCurve> {
    validate_rhos(rhos)?;
    let rho_max = rhos.last().copied().unwrap_or(0.0);
    let ev = GeneralProfileEvaluator::new(sigma_k, rho_max, spec)?;
    let samples = rhos
        .iter()
        .map(|&rho| {
            let (v, err) = ev.components(axis, rho)?;
            Ok(ProfileSample { rho, value: v[component.index()], error_estimate: err, general: None })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ProfileCurve { component, axis, sigma_k, samples })
}

/// Reduced-path profile with the general path attached to every sample.
pub fn profile_with_cross_check(
    component: Component,
    axis: Axis,
    rhos: &[f64],
    sigma_k: f64,
    spec: &QuadratureSpec,
) -> Result<ProfileCurve> {
    let mut curve = profile(component, axis, rhos, spec)?;
    let general = profile_general(component, axis, rhos, sigma_k, spec)?;
    for (s, g) in curve.samples.iter_mut().zip(general.samples) {
        s.general = Some(g.value);
    }
    curve.sigma_k = sigma_k;
    Ok(curve)
}
