//! Invariant batteries of each module, runnable as one report.
//!
//! Every check draws from its own ChaCha8 stream seeded by the suite seed
//! and the check name, so reports do not depend on scheduling.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::Matrix4;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fields::{
    check_tensor_covariance, grid_integrals, maxwell_convergence, reduced_profile_value, Axis, Component, FieldEvaluator,
    GeneralProfileEvaluator, GridSpec, Kernel, NarrowPacket,
};
use crate::numerics::QuadratureSpec;
use crate::poincare::{
    ibr_generators, ibr_matrix, iso_boost_rapidity, wigner_boost_angle, wigner_boost_oracle, wigner_rotation_angle,
    wigner_rotation_oracle, IbrParameter,
};
use crate::polarization::{check_boost_tensor_covariance, check_rotation_covariance, polarization_vector, Helicity};
use crate::spacetime::{boost_matrix, su2_of_rotation, FourVector, LorentzMatrix, LorentzTransform, Rotation, ThreeVector};
use crate::tolerances as tol;
use crate::wavepacket::{
    gaussian_beam_state, gaussian_spherical_state, moments, transform, HelicityAmplitude, MomentumHelicityAmplitude,
    PoincareElement,
};

pub const DEFAULT_SEED: u64 = 7;

/// Random samples per algebraic check.
const SAMPLES: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteName {
    Poincare,
    Polarization,
    Wavepacket,
    Fields,
    All,
}

impl SuiteName {
    pub const ALL: [SuiteName; 5] =
        [SuiteName::Poincare, SuiteName::Polarization, SuiteName::Wavepacket, SuiteName::Fields, SuiteName::All];

    pub fn name(self) -> &'static str {
        match self {
            SuiteName::Poincare => "poincare",
            SuiteName::Polarization => "polarization",
            SuiteName::Wavepacket => "wavepacket",
            SuiteName::Fields => "fields",
            SuiteName::All => "all",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SuiteName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SuiteName::ALL
            .into_iter()
            .find(|n| n.name() == s.to_ascii_lowercase())
            .ok_or_else(|| invalid(format!("unknown suite '{s}' (poincare|polarization|wavepacket|fields|all)")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    /// Replaces every shipped tolerance when set.
    pub tolerance_override: Option<f64>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { seed: DEFAULT_SEED, tolerance_override: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    /// Largest measured deviation; infinite when the check could not run.
    pub deviation: f64,
    pub tolerance: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: SuiteName,
    pub seed: u64,
    /// Sorted by name.
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

type Run = fn(&mut ChaCha8Rng) -> Result<f64>;

struct Check {
    name: &'static str,
    tolerance: f64,
    run: Run,
}

const fn check(name: &'static str, tolerance: f64, run: Run) -> Check {
    Check { name, tolerance, run }
}

/// FNV-1a, to derive a per-check stream from the name.
fn name_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Runs a named battery. Failures, including checks that error out, become
/// report entries.
pub fn run_suite(name: SuiteName, opts: &SuiteOptions) -> SuiteReport {
    let checks: Vec<Check> = match name {
        SuiteName::Poincare => poincare_checks(),
        SuiteName::Polarization => polarization_checks(),
        SuiteName::Wavepacket => wavepacket_checks(),
        SuiteName::Fields => fields_checks(),
        SuiteName::All => {
            let mut v = poincare_checks();
            v.extend(polarization_checks());
            v.extend(wavepacket_checks());
            v.extend(fields_checks());
            v
        }
    };
    let mut results: Vec<CheckResult> = checks
        .par_iter()
        .map(|c| {
            let tolerance = opts.tolerance_override.unwrap_or(c.tolerance);
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ name_hash(c.name));
            let (deviation, note) = match (c.run)(&mut rng) {
                Ok(d) => (d, None),
                Err(e) => (f64::INFINITY, Some(e.to_string())),
            };
            CheckResult {
                name: c.name.to_string(),
                passed: deviation.is_finite() && deviation <= tolerance,
                deviation,
                tolerance,
                note,
            }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    SuiteReport { suite: name, seed: opts.seed, checks: results }
}

fn random_dir(rng: &mut ChaCha8Rng) -> ThreeVector {
    let c: f64 = rng.gen_range(-1.0..1.0);
    ThreeVector::from_spherical(c.acos(), rng.gen_range(0.0..2.0 * PI))
}

fn random_rotation(rng: &mut ChaCha8Rng) -> Rotation {
    let axis = random_dir(rng);
    Rotation::new(axis, rng.gen_range(0.0..2.0 * PI)).expect("unit axis")
}

fn random_rapidity(rng: &mut ChaCha8Rng, max: f64) -> ThreeVector {
    random_dir(rng) * rng.gen_range(0.0..max)
}

fn random_ibr(rng: &mut ChaCha8Rng) -> IbrParameter {
    IbrParameter::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0))
}

/// Max-entry difference relative to the max entry of `b` (at least 1).
fn rel_diff(a: &LorentzMatrix, b: &LorentzMatrix) -> f64 {
    a.max_abs_diff(b) / b.0.amax().max(1.0)
}

/// Largest value of `f` over `SAMPLES` draws.
fn worst(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Result<f64>) -> Result<f64> {
    let mut m: f64 = 0.0;
    for _ in 0..SAMPLES {
        m = m.max(f(rng)?);
    }
    Ok(m)
}

/// Keeps drawing until the sample avoids the `-z` pole of the Wigner closed
/// forms.
fn off_pole<T>(rng: &mut ChaCha8Rng, mut f: impl FnMut(&mut ChaCha8Rng) -> Result<T>) -> Result<T> {
    for _ in 0..100 {
        match f(rng) {
            Err(Error::Degenerate(_)) => continue,
            r => return r,
        }
    }
    Err(Error::Degenerate("no off-pole sample in 100 draws".into()))
}

fn matrix_exp(a: Matrix4<f64>) -> Matrix4<f64> {
    let mut term = Matrix4::identity();
    let mut sum = Matrix4::identity();
    for n in 1..40 {
        term = term * a / n as f64;
        sum += term;
    }
    sum
}

fn poincare_checks() -> Vec<Check> {
    vec![
        check("poincare.collinear_boost_phase", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let n = random_dir(rng);
                let k = FourVector::massless(n * rng.gen_range(0.1..5.0));
                Ok(wigner_boost_angle(n * rng.gen_range(-3.0..3.0), k)?.angle().abs())
            })
        }),
        check("poincare.ibr_commutation", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let (a, b) = (ibr_matrix(random_ibr(rng)), ibr_matrix(random_ibr(rng)));
                Ok(rel_diff(&(a * b), &(b * a)))
            })
        }),
        check("poincare.ibr_composition", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let (a, b) = (random_ibr(rng), random_ibr(rng));
                Ok(rel_diff(&(ibr_matrix(a) * ibr_matrix(b)), &ibr_matrix(a + b)))
            })
        }),
        check("poincare.ibr_conjugation", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let a = random_ibr(rng);
                let g: f64 = rng.gen_range(0.0..2.0 * PI);
                let rz = Rotation::about_z(g).to_lorentz();
                Ok(rel_diff(&(rz * ibr_matrix(a) * rz.inverse()), &ibr_matrix(a.rotated(g))))
            })
        }),
        check("poincare.ibr_exponential_map", tol::PROJECTIVE, |rng| {
            let (lx, ly) = ibr_generators();
            worst(rng, |rng| {
                let a = random_ibr(rng);
                let e = LorentzMatrix(matrix_exp(lx * a.alpha_x + ly * a.alpha_y));
                Ok(rel_diff(&e, &ibr_matrix(a)))
            })
        }),
        check("poincare.ibr_fixes_reference", tol::ALGEBRAIC, |rng| {
            let kr = FourVector::reference(1.0);
            worst(rng, |rng| Ok(ibr_matrix(random_ibr(rng)).apply(kr).max_abs_diff(kr)))
        }),
        check("poincare.isoenergetic", tol::PROJECTIVE, |rng| {
            worst(rng, |rng| {
                let tb = rng.gen_range(0.01..PI - 0.01);
                let out = boost_matrix(iso_boost_rapidity(tb, rng.gen_range(0.0..2.0 * PI))?).apply(FourVector::reference(1.0));
                Ok((out.t - 1.0).abs())
            })
        }),
        check("poincare.wigner_boost_oracle", tol::PROJECTIVE, |rng| {
            worst(rng, |rng| {
                off_pole(rng, |rng| {
                    let z = random_rapidity(rng, 3.0);
                    let k = FourVector::massless(random_dir(rng) * rng.gen_range(0.1..5.0));
                    let w = wigner_boost_angle(z, k)?;
                    let (o, off) = wigner_boost_oracle(z, k)?;
                    Ok(w.distance(&o).max(off))
                })
            })
        }),
        check("poincare.wigner_cocycle", tol::PROJECTIVE, |rng| {
            worst(rng, |rng| {
                off_pole(rng, |rng| {
                    let (r1, r2) = (random_rotation(rng), random_rotation(rng));
                    let k = random_dir(rng);
                    let kk = FourVector::massless(k);
                    let lhs = wigner_rotation_angle(&(r1 * r2), kk)?;
                    let rhs = wigner_rotation_angle(&r1, FourVector::massless(r2.apply(k)))? + wigner_rotation_angle(&r2, kk)?;
                    Ok(lhs.distance(&rhs))
                })
            })
        }),
        check("poincare.wigner_rotation_oracle", tol::PROJECTIVE, |rng| {
            worst(rng, |rng| {
                off_pole(rng, |rng| {
                    let r = random_rotation(rng);
                    let k = random_dir(rng);
                    Ok(wigner_rotation_angle(&r, FourVector::massless(k))?.distance(&wigner_rotation_oracle(&r, k)))
                })
            })
        }),
        check("spacetime.boost_rapidity_addition", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let n = random_dir(rng);
                let (a, b) = (rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5));
                Ok(rel_diff(&(boost_matrix(n * a) * boost_matrix(n * b)), &boost_matrix(n * (a + b))))
            })
        }),
        check("spacetime.lorentz_metric", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let l = LorentzTransform::new(random_rotation(rng), random_rapidity(rng, 3.0)).matrix();
                Ok(l.metric_defect() / l.0.amax().powi(2))
            })
        }),
        check("spacetime.rotation_fixes_axis", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let r = random_rotation(rng);
                Ok(r.apply(r.axis()).max_abs_diff(r.axis()))
            })
        }),
        check("spacetime.rotation_orthogonality", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| Ok(random_rotation(rng).orthogonality_defect()))
        }),
        check("spacetime.su2_projective_homomorphism", tol::PROJECTIVE, |rng| {
            worst(rng, |rng| {
                let (r1, r2) = (random_rotation(rng), random_rotation(rng));
                let lhs = su2_of_rotation(&(r1 * r2));
                let rhs = su2_of_rotation(&r1) * su2_of_rotation(&r2);
                let neg = crate::spacetime::SpinorMatrix(-rhs.0);
                Ok(lhs.max_abs_diff(&rhs).min(lhs.max_abs_diff(&neg)))
            })
        }),
    ]
}

fn random_momentum(rng: &mut ChaCha8Rng) -> FourVector {
    FourVector::massless(random_dir(rng) * rng.gen_range(0.1..5.0))
}

fn random_helicity(rng: &mut ChaCha8Rng) -> Helicity {
    if rng.gen_bool(0.5) {
        Helicity::Plus
    } else {
        Helicity::Minus
    }
}

fn polarization_checks() -> Vec<Check> {
    vec![
        check("polarization.boost_tensor_covariance", tol::TENSOR_COVARIANCE, |rng| {
            worst(rng, |rng| {
                off_pole(rng, |rng| {
                    let l = LorentzTransform::new(random_rotation(rng), random_rapidity(rng, 3.0));
                    check_boost_tensor_covariance(&l, random_momentum(rng), random_helicity(rng))
                })
            })
        }),
        check("polarization.helicity_orthogonality", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let k = random_momentum(rng);
                let p = polarization_vector(k, Helicity::Plus)?.spatial();
                let m = polarization_vector(k, Helicity::Minus)?.spatial();
                Ok((0..3).map(|i| p[i].conj() * m[i]).sum::<Complex64>().norm())
            })
        }),
        check("polarization.lorentz_condition", tol::ALGEBRAIC, |rng| {
            worst(rng, |rng| {
                let k = random_momentum(rng);
                Ok(polarization_vector(k, random_helicity(rng))?.lorentz_condition().norm() / k.t)
            })
        }),
        check("polarization.rotation_covariance", tol::TENSOR_COVARIANCE, |rng| {
            worst(rng, |rng| {
                off_pole(rng, |rng| check_rotation_covariance(&random_rotation(rng), random_momentum(rng), random_helicity(rng)))
            })
        }),
    ]
}

fn test_beam() -> Result<MomentumHelicityAmplitude> {
    gaussian_beam_state(5.0, 1.0)
}

fn transforms(rng: &mut ChaCha8Rng) -> Vec<(&'static str, PoincareElement)> {
    vec![
        ("translation", PoincareElement::translation(FourVector::new(0.3, -0.2, 0.5, 0.1))),
        ("rotation", PoincareElement::rotation(&random_rotation(rng))),
        ("boost", PoincareElement::boost(random_rapidity(rng, 0.5))),
        ("parity", PoincareElement::Parity),
        ("time_reversal", PoincareElement::TimeReversal),
    ]
}

fn wavepacket_checks() -> Vec<Check> {
    vec![
        check("wavepacket.composition", tol::PROJECTIVE, |rng| {
            let psi = test_beam()?;
            let (r1, r2) = (random_rotation(rng), random_rotation(rng));
            let nested = transform(&transform(&psi, PoincareElement::rotation(&r2))?, PoincareElement::rotation(&r1))?;
            let direct = transform(&psi, PoincareElement::rotation(&(r1 * r2)))?;
            let center = (r1 * r2).apply(ThreeVector::Z * 5.0);
            let mut m: f64 = 0.0;
            for _ in 0..100 {
                let k = center + random_dir(rng) * rng.gen_range(0.0..2.0);
                let h = random_helicity(rng);
                m = m.max((nested.eval(k, h) - direct.eval(k, h)).norm());
            }
            Ok(m)
        }),
        check("wavepacket.four_momentum_covariance", tol::FOUR_MOMENTUM_COVARIANCE, |rng| {
            let spec = QuadratureSpec::default();
            let psi = test_beam()?;
            let p = moments(&psi, &spec)?.four_momentum;
            let r = random_rotation(rng);
            let z = random_rapidity(rng, 0.5);
            let mut m: f64 = 0.0;
            for (g, l) in [
                (PoincareElement::rotation(&r), r.to_lorentz()),
                (PoincareElement::boost(z), boost_matrix(z)),
            ] {
                let q = moments(&transform(&psi, g)?, &spec)?.four_momentum;
                let want = l.apply(p);
                m = m.max(q.max_abs_diff(want) / want.t);
            }
            Ok(m)
        }),
        check("wavepacket.helicity_flip", tol::NORM_TRANSFORMED, |rng| {
            let spec = QuadratureSpec::default();
            let psi = test_beam()?;
            let mut m: f64 = 0.0;
            for (name, g) in transforms(rng) {
                let want = if name == "parity" { -1.0 } else { 1.0 };
                m = m.max((moments(&transform(&psi, g)?, &spec)?.mean_helicity()? - want).abs());
            }
            Ok(m)
        }),
        check("wavepacket.parity_involution", tol::POINTWISE_AMPLITUDE, |rng| {
            let psi = test_beam()?;
            let twice = transform(&transform(&psi, PoincareElement::Parity)?, PoincareElement::Parity)?;
            let mut m: f64 = 0.0;
            for _ in 0..100 {
                let k = ThreeVector::Z * 5.0 + random_dir(rng) * rng.gen_range(0.0..3.0);
                let h = random_helicity(rng);
                m = m.max((twice.eval(k, h) - psi.eval(k, h)).norm());
            }
            Ok(m)
        }),
        check("wavepacket.spherical_energy", 1e-6, |_| {
            let m = moments(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default())?;
            Ok((m.four_momentum.t - 2.0 * (2.0 / PI).sqrt()).abs())
        }),
        check("wavepacket.spherical_momentum", tol::NORM_QUADRATURE, |_| {
            let m = moments(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default())?;
            Ok(m.four_momentum.spatial().norm())
        }),
        check("wavepacket.spherical_norm", tol::NORM_QUADRATURE, |_| {
            Ok((moments(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default())?.norm - 1.0).abs())
        }),
        check("wavepacket.unitarity", tol::NORM_TRANSFORMED, |rng| {
            let spec = QuadratureSpec::default();
            let psi = test_beam()?;
            let mut m: f64 = 0.0;
            for (_, g) in transforms(rng) {
                m = m.max((moments(&transform(&psi, g)?, &spec)?.norm - 1.0).abs());
            }
            Ok(m)
        }),
    ]
}

fn random_point(rng: &mut ChaCha8Rng, half: f64) -> FourVector {
    FourVector::new(
        rng.gen_range(-half..half),
        rng.gen_range(-half..half),
        rng.gen_range(-half..half),
        rng.gen_range(-half..half),
    )
}

fn fields_checks() -> Vec<Check> {
    vec![
        check("fields.beam_closed_form", tol::BEAM_CLOSED_FORM, |rng| {
            // eps = 0.01; points in the core, relative to the peak amplitude.
            let p = NarrowPacket::new(100.0, 1.0)?;
            let ev = FieldEvaluator::new(&gaussian_beam_state(100.0, 1.0)?, &QuadratureSpec::default().with_tolerance(1e-4), Kernel::Tensor)?;
            let mut m: f64 = 0.0;
            for _ in 0..5 {
                let s = p.sigma_x();
                let x = FourVector::new(0.0, rng.gen_range(-s..s), rng.gen_range(-s..s), rng.gen_range(-s..s));
                let (a, b) = (ev.field(x)?.components(), p.fields(x).components());
                m = m.max(a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max) / p.peak());
            }
            Ok(m)
        }),
        check("fields.beam_energy_momentum", tol::GRID_INTEGRAL_RELATIVE, |_| {
            // eps = 0.01.
            let k_av = 100.0;
            let g = grid_integrals(&gaussian_beam_state(k_av, 1.0)?, 0.0, ThreeVector::ZERO, &GridSpec::default())?;
            if !g.converged {
                return Err(Error::NonConvergence { estimate: g.error_estimate, tolerance: GridSpec::default().tolerance });
            }
            let de = (g.energy - k_av).abs() / k_av;
            let dp = g.poynting.max_abs_diff(ThreeVector::Z * k_av) / k_av;
            Ok(de.max(dp))
        }),
        check("fields.expectation_twice_real_part", tol::POSITIVE_FREQUENCY_CONSISTENCY, |rng| {
            let ev = FieldEvaluator::new(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default(), Kernel::Tensor)?;
            let mut m: f64 = 0.0;
            for _ in 0..4 {
                let p = ev.positive_frequency(random_point(rng, 1.0))?;
                let f = p.expectation().components();
                let twice: Vec<f64> = p.e_plus.iter().chain(&p.b_plus).map(|z| 2.0 * z.re).collect();
                m = m.max(f.iter().zip(&twice).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            }
            Ok(m)
        }),
        check("fields.maxwell_convergence", tol::MAXWELL_RATIO_BAND, |rng| {
            let spec = QuadratureSpec { radial_nodes: 16, polar_nodes: 32, azimuthal_nodes: 32, ..Default::default() }.with_tolerance(1e-4);
            let ev = FieldEvaluator::new(&gaussian_spherical_state(1.0)?, &spec, Kernel::Tensor)?;
            let xs = [random_point(rng, 0.5), random_point(rng, 0.5), random_point(rng, 0.5)];
            Ok(maxwell_convergence(&ev, &xs, 0.1)?.iter().map(|r| (r - tol::MAXWELL_RATIO_CENTER).abs()).fold(0.0, f64::max))
        }),
        check("fields.profile_path_agreement", tol::PROFILE_PATH_AGREEMENT, |_| {
            let spec = QuadratureSpec::default().with_tolerance(1e-6);
            let ev = GeneralProfileEvaluator::new(1.0, 3.0, &spec)?;
            let mut m: f64 = 0.0;
            for axis in Axis::ALL {
                for rho in [0.5, 1.7, 3.0] {
                    let (g, _) = ev.components(axis, rho)?;
                    for c in Component::ALL {
                        m = m.max((g[c.index()] - reduced_profile_value(c, axis, rho, &spec)?.value).abs());
                    }
                }
            }
            Ok(m)
        }),
        check("fields.profile_scale_invariance", tol::SCALE_INVARIANCE, |_| {
            let spec = QuadratureSpec::default().with_tolerance(1e-6);
            let base = GeneralProfileEvaluator::new(1.0, 2.0, &spec)?.components(Axis::Y, 1.3)?.0;
            let mut m: f64 = 0.0;
            for s in [0.5, 4.0] {
                let v = GeneralProfileEvaluator::new(s, 2.0, &spec)?.components(Axis::Y, 1.3)?.0;
                m = m.max(v.iter().zip(&base).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max));
            }
            Ok(m)
        }),
        check("fields.reality", tol::REALITY, |rng| {
            let ev = FieldEvaluator::new(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default(), Kernel::Tensor)?;
            let mut m: f64 = 0.0;
            for _ in 0..4 {
                m = m.max(ev.positive_frequency(random_point(rng, 1.0))?.reality_residue());
            }
            Ok(m)
        }),
        check("fields.superposition_half", tol::SUPERPOSITION_HALF, |rng| {
            let ev = FieldEvaluator::new(&gaussian_spherical_state(1.0)?, &QuadratureSpec::default(), Kernel::Tensor)?;
            let mut m: f64 = 0.0;
            for _ in 0..4 {
                let p = ev.positive_frequency(random_point(rng, 1.0))?;
                let half = p.superposition(Complex64::new(1.0, 0.0)).components();
                let full = p.expectation().components();
                m = m.max(half.iter().zip(&full).map(|(h, f)| (h - 0.5 * f).abs()).fold(0.0, f64::max));
            }
            Ok(m)
        }),
        check("fields.tensor_covariance", tol::FOUR_MOMENTUM_COVARIANCE, |rng| {
            let psi = gaussian_beam_state(5.0, 1.0)?;
            let xs = [random_point(rng, 0.5), random_point(rng, 0.5)];
            check_tensor_covariance(&psi, random_rapidity(rng, 0.5), &xs, &QuadratureSpec::default().with_tolerance(1e-4))
        }),
    ]
}
