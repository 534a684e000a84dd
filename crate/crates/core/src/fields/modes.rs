//! Plane-wave mode tables and single-point field evaluation.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{cross_real_complex, re3, FieldSample};
use crate::error::{Error, Result};
use crate::numerics::{BallGrid, IntegrationResult, Level, QuadValue, QuadratureSpec};
use crate::polarization::{polarization_spatial, Helicity};
use crate::spacetime::{FourVector, ThreeVector};
use crate::wavepacket::HelicityAmplitude;

type C = Complex64;

/// `(16 pi^3)^{-1/2}`: the matrix-element normalization of `<0|F|psi>`, so
/// that the coherent-state expectation is `2 Re` of it.
pub const COHERENT_NORMALIZATION: f64 = 0.044_896_780_531_291_64;

/// `(2 pi)^{-3/2}`: the Fourier normalization of the Sipe and
/// Landau-Peierls wavefunctions.
pub const WAVEFUNCTION_NORMALIZATION: f64 = 0.063_493_635_934_240_97;

/// Nodes whose largest coefficient is below this fraction of the largest in
/// the table are dropped; their total is far below the quadrature error.
const PRUNE_RELATIVE: f64 = 1e-20;

/// Which momentum-space integrand a mode table carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kernel {
    /// `<0|E|psi>, <0|B|psi>`: weight `T(k, lambda) / sqrt(omega)`.
    Tensor,
    /// Sipe wavefunction: `eps sqrt(omega)`, slots 3..6 unused.
    Sipe,
    /// Landau-Peierls pair: `T(k, lambda) / omega`.
    LandauPeierls,
}

impl Kernel {
    pub fn normalization(self) -> f64 {
        match self {
            Kernel::Tensor => COHERENT_NORMALIZATION,
            Kernel::Sipe | Kernel::LandauPeierls => WAVEFUNCTION_NORMALIZATION,
        }
    }

    /// Unnormalized six-slot coefficient of one plane wave `k` with
    /// amplitude `a`. `E = -omega eps` and `B = -k x eps` for `eps^0 = 0`.
    pub fn coefficient(self, k: ThreeVector, h: Helicity, a: C) -> [C; 6] {
        let omega = k.norm();
        let eps = polarization_spatial(k, h);
        let kxe = cross_real_complex(k, eps);
        let zero = C::new(0.0, 0.0);
        match self {
            Kernel::Tensor => {
                let s = omega.sqrt();
                [
                    -eps[0] * s * a,
                    -eps[1] * s * a,
                    -eps[2] * s * a,
                    -kxe[0] / s * a,
                    -kxe[1] / s * a,
                    -kxe[2] / s * a,
                ]
            }
            Kernel::Sipe => {
                let s = omega.sqrt();
                [eps[0] * s * a, eps[1] * s * a, eps[2] * s * a, zero, zero, zero]
            }
            Kernel::LandauPeierls => [
                -eps[0] * a,
                -eps[1] * a,
                -eps[2] * a,
                -kxe[0] / omega * a,
                -kxe[1] / omega * a,
                -kxe[2] / omega * a,
            ],
        }
    }
}

/// Quadrature nodes with their (weighted, normalized) coefficients.
#[derive(Clone, Debug)]
pub struct ModeTable {
    /// `(omega, kx, ky, kz)` per node.
    k: Vec<[f64; 4]>,
    coef: Vec<[C; 6]>,
    kernel: Kernel,
}

impl ModeTable {
    pub fn build(psi: &dyn HelicityAmplitude, grid: &BallGrid, kernel: Kernel) -> ModeTable {
        let norm = kernel.normalization();
        let rows: Vec<Option<([f64; 4], [C; 6])>> = grid
            .points
            .par_iter()
            .zip(grid.weights.par_iter())
            .map(|(&k, &w)| {
                let omega = k.norm();
                if omega == 0.0 {
                    return None;
                }
                let mut c = [C::new(0.0, 0.0); 6];
                for h in Helicity::BOTH {
                    let a = psi.eval(k, h);
                    if a == C::new(0.0, 0.0) {
                        continue;
                    }
                    let m = kernel.coefficient(k, h, a * (w * norm));
                    for (ci, mi) in c.iter_mut().zip(m) {
                        *ci += mi;
                    }
                }
                Some(([omega, k.x, k.y, k.z], c))
            })
            .collect();
        let peak = rows.iter().flatten().map(|(_, c)| c.magnitude()).fold(0.0, f64::max);
        let cut = peak * PRUNE_RELATIVE;
        let (k, coef) = rows.into_iter().flatten().filter(|(_, c)| c.magnitude() > cut).unzip();
        ModeTable { k, coef, kernel }
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn kernel(&self) -> Kernel {
        self.kernel
    }

    /// `sum_n c_n exp(-i (omega t - k . x))` and `sum_n |c_n|`.
    pub fn eval(&self, x: FourVector) -> ([C; 6], f64) {
        let mut acc = [C::new(0.0, 0.0); 6];
        let mut abs = 0.0;
        for (k, c) in self.k.iter().zip(&self.coef) {
            let phase = k[1] * x.x + k[2] * x.y + k[3] * x.z - k[0] * x.t;
            let (s, co) = phase.sin_cos();
            let p = C::new(co, s);
            for (a, ci) in acc.iter_mut().zip(c) {
                *a += ci * p;
            }
            abs += c.magnitude();
        }
        (acc, abs)
    }
}

/// Fine and coarse mode tables of one state for one kernel.
#[derive(Clone, Debug)]
pub struct FieldEvaluator {
    fine: ModeTable,
    coarse: ModeTable,
    tolerance: f64,
}

impl FieldEvaluator {
    pub fn new(psi: &dyn HelicityAmplitude, spec: &QuadratureSpec, kernel: Kernel) -> Result<Self> {
        spec.validate()?;
        let sup = psi.support();
        let fine = ModeTable::build(psi, &BallGrid::new(sup.center, sup.scale, spec, Level::Fine), kernel);
        let coarse = ModeTable::build(psi, &BallGrid::new(sup.center, sup.scale, spec, Level::Coarse), kernel);
        Ok(FieldEvaluator { fine, coarse, tolerance: spec.tolerance })
    }

    pub fn kernel(&self) -> Kernel {
        self.fine.kernel
    }

    pub fn len(&self) -> usize {
        self.fine.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fine.is_empty()
    }

    /// Six-slot mode sum with its fine-versus-coarse estimate; never fails.
    pub fn eval_raw(&self, x: FourVector) -> IntegrationResult<[C; 6]> {
        let (fine, abs) = self.fine.eval(x);
        let (coarse, _) = self.coarse.eval(x);
        let error_estimate = fine.distance(&coarse);
        let scale = fine.magnitude().max(abs);
        IntegrationResult {
            value: fine,
            error_estimate,
            magnitude: abs,
            refinements: 0,
            converged: error_estimate <= self.tolerance * scale,
        }
    }

    pub fn eval(&self, x: FourVector) -> Result<IntegrationResult<[C; 6]>> {
        self.eval_raw(x).checked(self.tolerance)
    }

    /// Positive-frequency `E^(+)`, `B^(+)` at `x` (tensor kernel only).
    pub fn positive_frequency(&self, x: FourVector) -> Result<PositiveFrequencySample> {
        self.require(Kernel::Tensor)?;
        let r = self.eval(x)?;
        Ok(PositiveFrequencySample::from_slots(x, r.value, r.error_estimate))
    }

    /// Coherent-state expectation: the mode sum plus its complex conjugate.
    pub fn field(&self, x: FourVector) -> Result<FieldSample> {
        Ok(self.positive_frequency(x)?.expectation())
    }

    /// Fields at many points, in input order.
    pub fn fields(&self, xs: &[FourVector]) -> Result<Vec<FieldSample>> {
        xs.par_iter().map(|x| self.field(*x)).collect()
    }

    fn require(&self, k: Kernel) -> Result<()> {
        if self.fine.kernel == k {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!("evaluator built for {:?}, need {:?}", self.fine.kernel, k)))
        }
    }
}

/// `E^(+) = <0|E|psi>` and `B^(+) = <0|B|psi>` at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PositiveFrequencySample {
    pub x: FourVector,
    pub e_plus: [C; 3],
    pub b_plus: [C; 3],
    pub error_estimate: f64,
}

impl PositiveFrequencySample {
    fn from_slots(x: FourVector, v: [C; 6], error_estimate: f64) -> Self {
        PositiveFrequencySample { x, e_plus: [v[0], v[1], v[2]], b_plus: [v[3], v[4], v[5]], error_estimate }
    }

    /// Complex tensor `F^(+)mu nu`.
    pub fn tensor(&self) -> nalgebra::Matrix4<C> {
        super::tensor_from_fields(self.e_plus, self.b_plus)
    }

    /// `F + F^*`, taken literally. The imaginary residue is at rounding level.
    pub fn expectation(&self) -> FieldSample {
        let sum = |v: [C; 3]| [v[0] + v[0].conj(), v[1] + v[1].conj(), v[2] + v[2].conj()];
        FieldSample {
            x: self.x,
            e: re3(sum(self.e_plus)),
            b: re3(sum(self.b_plus)),
            e_plus: Some(self.e_plus),
            b_plus: Some(self.b_plus),
            error_estimate: 2.0 * self.error_estimate,
        }
    }

    /// Largest imaginary part of `F + F^*`.
    pub fn reality_residue(&self) -> f64 {
        self.e_plus
            .iter()
            .chain(&self.b_plus)
            .map(|v| (v + v.conj()).im.abs())
            .fold(0.0, f64::max)
    }

    /// `(beta F^(+) + beta^* F^(-)) / (1 + |beta|^2)` with `F^(-) = (F^(+))^*`.
    pub fn superposition(&self, beta: C) -> FieldSample {
        let d = 1.0 + beta.norm_sqr();
        let mix = |v: [C; 3]| {
            let m = |z: C| ((beta * z + beta.conj() * z.conj()) / d).re;
            ThreeVector::new(m(v[0]), m(v[1]), m(v[2]))
        };
        FieldSample {
            x: self.x,
            e: mix(self.e_plus),
            b: mix(self.b_plus),
            e_plus: None,
            b_plus: None,
            error_estimate: 2.0 * beta.norm() / d * self.error_estimate,
        }
    }
}

/// `<0|F^{mu nu}(x)|psi>` by quadrature.
pub fn positive_frequency_tensor(
    psi: &dyn HelicityAmplitude,
    x: FourVector,
    spec: &QuadratureSpec,
) -> Result<PositiveFrequencySample> {
    FieldEvaluator::new(psi, spec, Kernel::Tensor)?.positive_frequency(x)
}

/// Coherent-state field expectation at `x`.
pub fn field_expectation(psi: &dyn HelicityAmplitude, x: FourVector, spec: &QuadratureSpec) -> Result<FieldSample> {
    FieldEvaluator::new(psi, spec, Kernel::Tensor)?.field(x)
}

/// Expectation in `(|0> + beta |psi>) / sqrt(1 + |beta|^2)`.
pub fn superposition_expectation(
    psi: &dyn HelicityAmplitude,
    beta: C,
    x: FourVector,
    spec: &QuadratureSpec,
) -> Result<FieldSample> {
    Ok(positive_frequency_tensor(psi, x, spec)?.superposition(beta))
}

/// `(E^2 + B^2) / 2`.
pub fn energy_density(s: &FieldSample) -> f64 {
    0.5 * (s.e.norm_sqr() + s.b.norm_sqr())
}

/// Position wavefunctions at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionSample {
    pub x: FourVector,
    /// Sipe wavefunction.
    pub sipe: [C; 3],
    /// Landau-Peierls electric and magnetic parts.
    pub lp_e: [C; 3],
    pub lp_b: [C; 3],
    /// Riemann-Silberstein `F_+ = (E^(+) + i B^(+)) / sqrt 2` and `F_-`.
    pub rs_plus: [C; 3],
    pub rs_minus: [C; 3],
    pub sipe_density: f64,
    pub lp_density: f64,
    pub rs_density: f64,
}

impl WavefunctionSample {
    pub fn from_parts(x: FourVector, sipe: [C; 3], lp: [C; 6], tensor: [C; 6]) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let i = C::new(0.0, 1.0);
        let rs_plus = [0, 1, 2].map(|j| (tensor[j] + i * tensor[j + 3]) * s);
        let rs_minus = [0, 1, 2].map(|j| (tensor[j] - i * tensor[j + 3]) * s);
        let n2 = |v: &[C]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
        WavefunctionSample {
            x,
            sipe,
            lp_e: [lp[0], lp[1], lp[2]],
            lp_b: [lp[3], lp[4], lp[5]],
            rs_plus,
            rs_minus,
            sipe_density: n2(&sipe),
            lp_density: 0.5 * n2(&lp),
            rs_density: n2(&rs_plus) + n2(&rs_minus),
        }
    }
}

/// Sipe, Landau-Peierls and Riemann-Silberstein wavefunctions at `x`.
pub fn wavefunction_measures(
    psi: &dyn HelicityAmplitude,
    x: FourVector,
    spec: &QuadratureSpec,
) -> Result<WavefunctionSample> {
    let sipe = FieldEvaluator::new(psi, spec, Kernel::Sipe)?.eval(x)?.value;
    let lp = FieldEvaluator::new(psi, spec, Kernel::LandauPeierls)?.eval(x)?.value;
    let t = FieldEvaluator::new(psi, spec, Kernel::Tensor)?.eval(x)?.value;
    Ok(WavefunctionSample::from_parts(x, [sipe[0], sipe[1], sipe[2]], lp, t))
}
