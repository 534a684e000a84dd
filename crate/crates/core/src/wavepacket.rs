//! Momentum-helicity amplitudes, Gaussian test states and their
//! transformations.
//!
//! A state is a base Gaussian plus a stack of transformations, evaluated
//! lazily: each layer maps `(k, lambda)` back to the previous layer and
//! multiplies by its phase and Jacobian. Nothing is resampled, so later
//! quadratures see the exact transformed function.
//!
//! Under `k -> -k` the azimuth shifts by `pi` and the polar angle becomes
//! `pi - theta`; the parity and time-reversal layers rely on that convention.

use std::f64::consts::PI;
use std::fmt::Debug;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::numerics::{integrate_ball, IntegrationResult, QuadratureSpec};
use crate::poincare::{wigner_boost_angle, wigner_rotation_angle, wigner_rotation_oracle, WignerPhase};
use crate::polarization::Helicity;
use crate::spacetime::{boost_matrix, FourVector, LorentzMatrix, Rotation, ThreeVector};

type C = Complex64;

/// Intrinsic parity of the photon.
pub const PHOTON_PARITY: f64 = -1.0;

/// Ratio `eps = sigma_k / k_av` above which the narrow-packet closed forms are
/// no longer trusted.
pub const NARROW_EPSILON_LIMIT: f64 = 0.2;

/// Where an amplitude lives in momentum space: a ball of a few `scale`
/// around `center`. Used to place quadrature grids.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Support {
    pub center: ThreeVector,
    pub scale: f64,
}

/// A momentum-helicity amplitude `Psi_lambda(k)`.
pub trait HelicityAmplitude: Send + Sync + Debug {
    fn eval(&self, k: ThreeVector, h: Helicity) -> C;
    fn support(&self) -> Support;
}

/// The untransformed Gaussian of a state descriptor.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseState {
    /// Positive-helicity Gaussian around `k_av z`.
    Beam { k_av: f64, sigma_k: f64 },
    /// Positive-helicity Gaussian around the origin.
    Spherical { sigma_k: f64 },
}

impl BaseState {
    pub fn sigma_k(&self) -> f64 {
        match *self {
            BaseState::Beam { sigma_k, .. } | BaseState::Spherical { sigma_k } => sigma_k,
        }
    }

    /// `sigma_x = 1 / (2 sigma_k)`.
    pub fn sigma_x(&self) -> f64 {
        0.5 / self.sigma_k()
    }

    pub fn center(&self) -> ThreeVector {
        match *self {
            BaseState::Beam { k_av, .. } => ThreeVector::Z * k_av,
            BaseState::Spherical { .. } => ThreeVector::ZERO,
        }
    }

    fn validate(&self) -> Result<()> {
        let s = self.sigma_k();
        if !(s > 0.0 && s.is_finite()) {
            return Err(invalid(format!("sigma_k must be positive, got {s}")));
        }
        if let BaseState::Beam { k_av, .. } = *self {
            if !(k_av > 0.0 && k_av.is_finite()) {
                return Err(invalid(format!("k_av must be positive, got {k_av}")));
            }
        }
        Ok(())
    }

    fn eval(&self, k: ThreeVector, h: Helicity) -> C {
        if h != Helicity::Plus {
            return C::new(0.0, 0.0);
        }
        let s = self.sigma_k();
        let d2 = (k - self.center()).norm_sqr();
        let norm = (2.0 * PI * s * s).powf(-0.75);
        C::new(norm * (-d2 / (4.0 * s * s)).exp(), 0.0)
    }
}

/// One transformation acting on an amplitude.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PoincareElement {
    /// Spacetime translation by `a = (a0, a1, a2, a3)`.
    Translation { a: [f64; 4] },
    /// Right-handed rotation; the axis is normalized on use.
    Rotation { axis: [f64; 3], angle: f64 },
    /// Pure boost with rapidity vector `zeta`.
    Boost { rapidity: [f64; 3] },
    Parity,
    TimeReversal,
}

impl PoincareElement {
    pub fn rotation(r: &Rotation) -> Self {
        PoincareElement::Rotation { axis: r.axis().to_array(), angle: r.angle() }
    }

    pub fn boost(rapidity: ThreeVector) -> Self {
        PoincareElement::Boost { rapidity: rapidity.to_array() }
    }

    pub fn translation(a: FourVector) -> Self {
        PoincareElement::Translation { a: a.to_array() }
    }

    fn compile(&self) -> Result<Layer> {
        Ok(match *self {
            PoincareElement::Translation { a } => {
                if a.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("translation must be finite"));
                }
                Layer::Translation(FourVector::from_array(a))
            }
            PoincareElement::Rotation { axis, angle } => {
                let axis = ThreeVector::from_array(axis)
                    .normalized()
                    .ok_or_else(|| invalid("rotation axis must be non-zero and finite"))?;
                Layer::Rotation(Rotation::new(axis, angle)?)
            }
            PoincareElement::Boost { rapidity } => {
                let z = ThreeVector::from_array(rapidity);
                if !z.is_finite() {
                    return Err(invalid("rapidity must be finite"));
                }
                Layer::Boost { rapidity: z, inverse: boost_matrix(-z) }
            }
            PoincareElement::Parity => Layer::Parity,
            PoincareElement::TimeReversal => Layer::TimeReversal,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Layer {
    Translation(FourVector),
    Rotation(Rotation),
    Boost { rapidity: ThreeVector, inverse: LorentzMatrix },
    Parity,
    TimeReversal,
}

/// Serializable description of a state: base Gaussian plus transformations,
/// applied in order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateDescriptor {
    #[serde(flatten)]
    pub base: BaseState,
    #[serde(default)]
    pub transforms: Vec<PoincareElement>,
}

impl StateDescriptor {
    pub fn build(&self) -> Result<MomentumHelicityAmplitude> {
        self.base.validate()?;
        let layers = self.transforms.iter().map(|t| t.compile()).collect::<Result<Vec<_>>>()?;
        Ok(MomentumHelicityAmplitude { descriptor: self.clone(), layers })
    }
}

/// A Gaussian test state with its transformation stack.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentumHelicityAmplitude {
    descriptor: StateDescriptor,
    layers: Vec<Layer>,
}

/// Positive-helicity Gaussian beam around `k_av z`.
pub fn gaussian_beam_state(k_av: f64, sigma_k: f64) -> Result<MomentumHelicityAmplitude> {
    let d = StateDescriptor { base: BaseState::Beam { k_av, sigma_k }, transforms: vec![] };
    let state = d.build()?;
    let eps = sigma_k / k_av;
    if eps > NARROW_EPSILON_LIMIT {
        log::warn!("beam state with sigma_k/k_av = {eps:.3} > {NARROW_EPSILON_LIMIT}; narrow-packet closed forms degrade");
    }
    Ok(state)
}

/// Positive-helicity Gaussian around the origin.
pub fn gaussian_spherical_state(sigma_k: f64) -> Result<MomentumHelicityAmplitude> {
    StateDescriptor { base: BaseState::Spherical { sigma_k }, transforms: vec![] }.build()
}

/// `transform(psi, g)`: the amplitude of `U(g)|psi>`.
pub fn transform(psi: &MomentumHelicityAmplitude, g: PoincareElement) -> Result<MomentumHelicityAmplitude> {
    let mut d = psi.descriptor.clone();
    d.transforms.push(g);
    d.build()
}

fn phase(theta: f64) -> C {
    C::from_polar(1.0, theta)
}

/// Falls back to a zero phase at `k = 0`, a null set for every integral.
fn safe_phase(w: Result<WignerPhase>) -> WignerPhase {
    w.unwrap_or(WignerPhase::ZERO)
}

impl MomentumHelicityAmplitude {
    pub fn descriptor(&self) -> &StateDescriptor {
        &self.descriptor
    }

    pub fn base(&self) -> BaseState {
        self.descriptor.base
    }

    fn eval_layer(&self, depth: usize, k: ThreeVector, h: Helicity) -> C {
        if depth == 0 {
            return self.descriptor.base.eval(k, h);
        }
        let inner = |k: ThreeVector, h: Helicity| self.eval_layer(depth - 1, k, h);
        let lam = h.as_f64();
        match &self.layers[depth - 1] {
            Layer::Translation(a) => {
                let kk = FourVector::massless(k);
                phase(kk.dot(*a)) * inner(k, h)
            }
            Layer::Rotation(r) => {
                let kp = r.inverse().apply(k);
                let w = rotation_phase(r, kp);
                w.helicity_factor(h.value()) * inner(kp, h)
            }
            Layer::Boost { rapidity, inverse } => {
                let kk = FourVector::massless(k);
                let back = inverse.apply(kk);
                let kp = back.spatial();
                let omega = kk.t;
                if omega == 0.0 {
                    return inner(kp, h);
                }
                // gamma (1 - beta . k_hat) = omega' / omega
                let jac = (back.t / omega).sqrt();
                let w = safe_phase(wigner_boost_angle(*rapidity, FourVector::massless(kp)));
                w.helicity_factor(h.value()) * jac * inner(kp, h)
            }
            Layer::Parity => {
                let phi = k.azimuth();
                phase(2.0 * lam * phi) * PHOTON_PARITY * inner(-k, h.flipped())
            }
            Layer::TimeReversal => {
                let phi = k.azimuth();
                phase(-2.0 * lam * phi) * inner(-k, h).conj()
            }
        }
    }
}

/// `w(R, k)` with a spinor-product fallback at the `-z` pole of `R k`.
fn rotation_phase(r: &Rotation, k: ThreeVector) -> WignerPhase {
    if k.norm_sqr() == 0.0 {
        return WignerPhase::ZERO;
    }
    match wigner_rotation_angle(r, FourVector::massless(k)) {
        Ok(w) => w,
        Err(_) => wigner_rotation_oracle(r, k),
    }
}

impl HelicityAmplitude for MomentumHelicityAmplitude {
    fn eval(&self, k: ThreeVector, h: Helicity) -> C {
        self.eval_layer(self.layers.len(), k, h)
    }

    fn support(&self) -> Support {
        let mut center = self.descriptor.base.center();
        let mut scale = self.descriptor.base.sigma_k();
        for layer in &self.layers {
            match layer {
                Layer::Translation(_) => {}
                Layer::Rotation(r) => center = r.apply(center),
                Layer::Boost { rapidity, .. } => {
                    center = boost_matrix(*rapidity).apply(FourVector::massless(center)).spatial();
                    scale *= rapidity.norm().exp();
                }
                Layer::Parity | Layer::TimeReversal => center = -center,
            }
        }
        Support { center, scale }
    }
}

/// Norm, four-momentum and helicity integrals from one quadrature pass.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub norm: f64,
    pub four_momentum: FourVector,
    /// `int |Psi|^2 lambda` (not divided by the norm).
    pub helicity_integral: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

impl Moments {
    pub fn mean_helicity(&self) -> Result<f64> {
        if self.norm <= 0.0 {
            return Err(invalid("mean helicity of a state with zero norm"));
        }
        Ok(self.helicity_integral / self.norm)
    }
}

/// Unchecked moment integrals.
pub fn moments_raw(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec) -> Result<IntegrationResult<[f64; 6]>> {
    let sup = psi.support();
    integrate_ball(
        |k| {
            let p = psi.eval(k, Helicity::Plus).norm_sqr();
            let m = psi.eval(k, Helicity::Minus).norm_sqr();
            let d = p + m;
            [d, d * k.norm(), d * k.x, d * k.y, d * k.z, p - m]
        },
        sup.center,
        sup.scale,
        spec,
    )
}

/// All moments; fails when the error estimate exceeds the quadrature tolerance.
pub fn moments(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec) -> Result<Moments> {
    let r = moments_raw(psi, spec)?.checked(spec.tolerance)?;
    let v = r.value;
    Ok(Moments {
        norm: v[0],
        four_momentum: FourVector::new(v[1], v[2], v[3], v[4]),
        helicity_integral: v[5],
        error_estimate: r.error_estimate,
        converged: r.converged,
    })
}

/// `int d^3k sum_lambda |Psi_lambda(k)|^2`.
pub fn norm(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec) -> Result<f64> {
    Ok(moments(psi, spec)?.norm)
}

/// `int d^3k sum_lambda |Psi_lambda(k)|^2 k^mu`.
pub fn mean_four_momentum(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec) -> Result<FourVector> {
    Ok(moments(psi, spec)?.four_momentum)
}

/// Helicity average normalized by the norm.
pub fn mean_helicity(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec) -> Result<f64> {
    moments(psi, spec)?.mean_helicity()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::integrate_radial;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn small_spec() -> QuadratureSpec {
        QuadratureSpec { radial_panels: 8, radial_nodes: 16, polar_nodes: 32, azimuthal_nodes: 32, ..Default::default() }
    }

    fn random_dir(rng: &mut ChaCha8Rng) -> ThreeVector {
        let c: f64 = rng.gen_range(-1.0..1.0);
        let p: f64 = rng.gen_range(0.0..2.0 * PI);
        ThreeVector::from_spherical(c.acos(), p)
    }

    /// Mixture of two helicity copies of the spherical Gaussian.
    #[derive(Debug)]
    struct Mixed {
        plus: f64,
        minus: f64,
    }

    impl HelicityAmplitude for Mixed {
        fn eval(&self, k: ThreeVector, h: Helicity) -> C {
            let base = BaseState::Spherical { sigma_k: 1.0 }.eval(k, Helicity::Plus);
            match h {
                Helicity::Plus => base * self.plus.sqrt(),
                Helicity::Minus => base * self.minus.sqrt(),
            }
        }
        fn support(&self) -> Support {
            Support { center: ThreeVector::ZERO, scale: 1.0 }
        }
    }

    #[derive(Debug)]
    struct Scaled<'a>(&'a MomentumHelicityAmplitude, C);

    impl HelicityAmplitude for Scaled<'_> {
        fn eval(&self, k: ThreeVector, h: Helicity) -> C {
            self.1 * self.0.eval(k, h)
        }
        fn support(&self) -> Support {
            self.0.support()
        }
    }

    #[test]
    fn beam_values() {
        let s = gaussian_beam_state(10.0, 0.5).unwrap();
        let peak = (2.0 * PI * 0.25f64).powf(-0.75);
        assert_eq!(s.eval(ThreeVector::Z * 10.0, Helicity::Plus), C::new(peak, 0.0));
        assert_eq!(s.eval(ThreeVector::new(0.1, 0.2, 9.8), Helicity::Minus), C::new(0.0, 0.0));
        assert!(gaussian_beam_state(0.0, 1.0).is_err());
        assert!(gaussian_beam_state(1.0, -1.0).is_err());
        assert!(gaussian_spherical_state(0.0).is_err());
    }

    #[test]
    fn norms_of_test_states() {
        let spec = QuadratureSpec::default();
        for sigma in [0.5, 1.0, 4.0] {
            let s = gaussian_spherical_state(sigma).unwrap();
            assert!((norm(&s, &spec).unwrap() - 1.0).abs() < 1e-8, "sigma={sigma}");
        }
        let b = gaussian_beam_state(100.0, 1.0).unwrap();
        assert!((norm(&b, &spec).unwrap() - 1.0).abs() < 1e-8);
    }

    #[test]
    fn scaling_by_constant() {
        let s = gaussian_spherical_state(1.0).unwrap();
        let c = C::new(0.6, -1.7);
        let n = norm(&Scaled(&s, c), &small_spec()).unwrap();
        assert!((n - c.norm_sqr()).abs() < 1e-8 * c.norm_sqr());
    }

    #[test]
    fn spherical_energy_matches_maxwell_mean() {
        // Independent radial oracle: int 4 pi k^3 |Psi|^2 dk.
        let sigma: f64 = 1.7;
        let spec = QuadratureSpec::default();
        let oracle = integrate_radial(
            |x| {
                let k = x * sigma;
                4.0 * PI * k.powi(3) * (2.0 * PI * sigma * sigma).powf(-1.5) * (-k * k / (2.0 * sigma * sigma)).exp() * sigma
            },
            &spec,
        )
        .unwrap()
        .value;
        let exact = 2.0 * (2.0 / PI).sqrt() * sigma;
        assert!((oracle - exact).abs() < 1e-10);
        let p = mean_four_momentum(&gaussian_spherical_state(sigma).unwrap(), &spec).unwrap();
        assert!((p.t - exact).abs() < 1e-6);
        assert!(p.spatial().norm() < 1e-8 * sigma);
    }

    #[test]
    fn beam_momentum_leading_order() {
        let p = mean_four_momentum(&gaussian_beam_state(100.0, 1.0).unwrap(), &QuadratureSpec::default()).unwrap();
        assert!((p.z - 100.0).abs() < 1e-8);
        assert!(p.x.abs() < 1e-8 && p.y.abs() < 1e-8);
        // Energy exceeds |<k>| by the transverse spread, O(eps^2) relative.
        assert!(p.t > 100.0 && p.t - 100.0 < 100.0 * 1e-3);
    }

    #[test]
    fn helicity_means() {
        let spec = small_spec();
        assert!((mean_helicity(&gaussian_spherical_state(2.0).unwrap(), &spec).unwrap() - 1.0).abs() < 1e-12);
        assert!((mean_helicity(&gaussian_beam_state(20.0, 1.0).unwrap(), &spec).unwrap() - 1.0).abs() < 1e-12);
        assert!(mean_helicity(&Mixed { plus: 0.5, minus: 0.5 }, &spec).unwrap().abs() < 1e-12);
        assert!((mean_helicity(&Mixed { plus: 0.75, minus: 0.25 }, &spec).unwrap() - 0.5).abs() < 1e-12);
        let flipped = transform(&gaussian_spherical_state(1.0).unwrap(), PoincareElement::Parity).unwrap();
        assert!((mean_helicity(&flipped, &spec).unwrap() + 1.0).abs() < 1e-12);
    }

    #[test]
    fn parity_is_an_involution() {
        let s = gaussian_beam_state(5.0, 1.0).unwrap();
        let s = transform(&s, PoincareElement::rotation(&Rotation::new(ThreeVector::new(0.6, 0.0, 0.8), 0.7).unwrap()))
            .unwrap();
        let pp = transform(&transform(&s, PoincareElement::Parity).unwrap(), PoincareElement::Parity).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let k = random_dir(&mut rng) * rng.gen_range(0.5..8.0);
            for h in Helicity::BOTH {
                let d = (pp.eval(k, h) - s.eval(k, h)).norm();
                assert!(d <= 1e-12 * (1.0 + s.eval(k, h).norm()), "{k:?}");
            }
        }
    }

    #[test]
    fn translation_is_a_pure_phase() {
        let s = gaussian_spherical_state(1.0).unwrap();
        let t = transform(&s, PoincareElement::translation(FourVector::new(0.3, 1.0, -2.0, 0.5))).unwrap();
        for k in [ThreeVector::new(0.3, 0.1, -0.2), ThreeVector::new(-1.0, 2.0, 0.5)] {
            assert!((t.eval(k, Helicity::Plus).norm() - s.eval(k, Helicity::Plus).norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn boosted_spherical_state_is_covariant() {
        let spec = QuadratureSpec::default().with_tolerance(1e-6);
        let s = gaussian_spherical_state(1.0).unwrap();
        let zeta = ThreeVector::X * 1.0;
        let b = transform(&s, PoincareElement::boost(zeta)).unwrap();
        let m0 = moments(&s, &spec).unwrap();
        let m1 = moments(&b, &spec).unwrap();
        assert!((m1.norm - 1.0).abs() < 1e-6, "{}", m1.norm);
        let expect = boost_matrix(zeta).apply(m0.four_momentum);
        let rel = m1.four_momentum.max_abs_diff(expect) / expect.t;
        assert!(rel < 1e-5, "{rel}");
    }

    #[test]
    fn unitarity_for_every_kind() {
        let spec = QuadratureSpec::default().with_tolerance(1e-6);
        let base = gaussian_beam_state(4.0, 0.8).unwrap();
        let elements = [
            PoincareElement::translation(FourVector::new(0.4, -1.0, 2.0, 0.3)),
            PoincareElement::Rotation { axis: [1.0, 1.0, 0.0], angle: 2.2 },
            PoincareElement::boost(ThreeVector::new(0.2, -0.3, 0.35)),
            PoincareElement::Parity,
            PoincareElement::TimeReversal,
        ];
        for g in elements {
            let t = transform(&base, g).unwrap();
            let n = norm(&t, &spec).unwrap();
            assert!((n - 1.0).abs() < 1e-6, "{g:?}: {n}");
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let s = gaussian_beam_state(3.0, 0.5).unwrap();
        let s = transform(&s, PoincareElement::boost(ThreeVector::new(0.1, 0.0, 0.2))).unwrap();
        let s = transform(&s, PoincareElement::TimeReversal).unwrap();
        let json = serde_json::to_string(s.descriptor()).unwrap();
        let back: StateDescriptor = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, s.descriptor());
        let parsed: StateDescriptor = serde_json::from_str(r#"{"kind":"spherical","sigma_k":2.0}"#).unwrap();
        assert!(parsed.transforms.is_empty());
        let bad: StateDescriptor =
            serde_json::from_str(r#"{"kind":"spherical","sigma_k":1.0,"transforms":[{"type":"rotation","axis":[0,0,0],"angle":1}]}"#)
                .unwrap();
        assert!(bad.build().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rotation_composition(a1 in 0.0f64..PI, p1 in 0.0f64..(2.0 * PI), o1 in 0.0f64..(2.0 * PI),
                                a2 in 0.0f64..PI, p2 in 0.0f64..(2.0 * PI), o2 in 0.0f64..(2.0 * PI),
                                kt in 0.0f64..PI, kp in 0.0f64..(2.0 * PI), km in 0.1f64..6.0) {
            let r1 = Rotation::new(ThreeVector::from_spherical(a1, p1), o1).unwrap();
            let r2 = Rotation::new(ThreeVector::from_spherical(a2, p2), o2).unwrap();
            let s = gaussian_beam_state(3.0, 1.0).unwrap();
            let nested = transform(&transform(&s, PoincareElement::rotation(&r2)).unwrap(), PoincareElement::rotation(&r1)).unwrap();
            let direct = transform(&s, PoincareElement::rotation(&(r1 * r2))).unwrap();
            let k = ThreeVector::from_spherical(kt, kp) * km;
            let a = nested.eval(k, Helicity::Plus);
            let b = direct.eval(k, Helicity::Plus);
            prop_assert!((a - b).norm() <= 1e-9 * (1.0 + b.norm()));
        }

        #[test]
        fn rotation_invariance_of_spherical_modulus(t in 0.0f64..PI, p in 0.0f64..(2.0 * PI), o in 0.0f64..(2.0 * PI), kt in 0.0f64..PI, kp in 0.0f64..(2.0 * PI)) {
            let s = gaussian_spherical_state(1.3).unwrap();
            let r = Rotation::new(ThreeVector::from_spherical(t, p), o).unwrap();
            let k = ThreeVector::from_spherical(kt, kp) * 1.1;
            prop_assert!((s.eval(r.apply(k), Helicity::Plus).norm() - s.eval(k, Helicity::Plus).norm()).abs() < 1e-15);
        }
    }
}
