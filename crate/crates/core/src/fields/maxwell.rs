//! Free Maxwell equations by finite differences, and end-to-end tensor
//! covariance of the field expectation.

use serde::{Deserialize, Serialize};

use super::modes::{FieldEvaluator, Kernel};
use super::narrow::NarrowPacket;
use super::FieldSample;
use crate::error::{invalid, Result};
use crate::numerics::QuadratureSpec;
use crate::spacetime::{boost_matrix, FourVector, ThreeVector};
use crate::wavepacket::{transform, MomentumHelicityAmplitude, PoincareElement};

/// Anything that yields real fields at a spacetime point.
pub trait FieldSource: Sync {
    fn field_at(&self, x: FourVector) -> Result<FieldSample>;
}

impl FieldSource for FieldEvaluator {
    fn field_at(&self, x: FourVector) -> Result<FieldSample> {
        self.field(x)
    }
}

impl FieldSource for NarrowPacket {
    fn field_at(&self, x: FourVector) -> Result<FieldSample> {
        Ok(self.fields(x))
    }
}

/// Magnitudes of the four residuals at one point.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxwellResiduals {
    pub h: f64,
    pub div_e: f64,
    pub div_b: f64,
    /// `|curl E + dB/dt|`.
    pub faraday: f64,
    /// `|curl B - dE/dt|`.
    pub ampere: f64,
}

impl MaxwellResiduals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.div_e, self.div_b, self.faraday, self.ampere]
    }

    /// `self / finer` per equation; about 4 for second-order differences.
    pub fn ratios(&self, finer: &MaxwellResiduals) -> [f64; 4] {
        let a = self.as_array();
        let b = finer.as_array();
        [0, 1, 2, 3].map(|i| a[i] / b[i])
    }
}

/// Central differences with step `h` in `t, x, y, z` around `x`.
pub fn maxwell_residuals(src: &dyn FieldSource, x: FourVector, h: f64) -> Result<MaxwellResiduals> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(invalid(format!("finite-difference step must be positive, got {h}")));
    }
    // d[mu] = (F(x + h e_mu) - F(x - h e_mu)) / 2h for the six components.
    let mut d = [[0.0; 6]; 4];
    for (mu, dm) in d.iter_mut().enumerate() {
        let mut shift = [0.0; 4];
        shift[mu] = h;
        let s = FourVector::from_array(shift);
        let p = src.field_at(x + s)?.components();
        let m = src.field_at(x - s)?.components();
        for (i, v) in dm.iter_mut().enumerate() {
            *v = (p[i] - m[i]) / (2.0 * h);
        }
    }
    // Component c of E is slot c, of B slot 3 + c; spatial derivative j is d[1 + j].
    let de = |j: usize, c: usize| d[1 + j][c];
    let db = |j: usize, c: usize| d[1 + j][3 + c];
    let curl = |g: &dyn Fn(usize, usize) -> f64| {
        ThreeVector::new(g(1, 2) - g(2, 1), g(2, 0) - g(0, 2), g(0, 1) - g(1, 0))
    };
    let dt_e = ThreeVector::new(d[0][0], d[0][1], d[0][2]);
    let dt_b = ThreeVector::new(d[0][3], d[0][4], d[0][5]);
    Ok(MaxwellResiduals {
        h,
        div_e: (de(0, 0) + de(1, 1) + de(2, 2)).abs(),
        div_b: (db(0, 0) + db(1, 1) + db(2, 2)).abs(),
        faraday: (curl(&de) + dt_b).norm(),
        ampere: (curl(&db) - dt_e).norm(),
    })
}

/// Per-equation ratio of residuals summed over `xs` at steps `h` and `h/2`.
///
/// Summing first keeps the ratio meaningful at points where the leading
/// `h^2` coefficient of one equation happens to nearly vanish.
pub fn maxwell_convergence(src: &dyn FieldSource, xs: &[FourVector], h: f64) -> Result<[f64; 4]> {
    if xs.is_empty() {
        return Err(invalid("need at least one point"));
    }
    let mut coarse = [0.0; 4];
    let mut fine = [0.0; 4];
    for &x in xs {
        let a = maxwell_residuals(src, x, h)?.as_array();
        let b = maxwell_residuals(src, x, 0.5 * h)?.as_array();
        for i in 0..4 {
            coarse[i] += a[i];
            fine[i] += b[i];
        }
    }
    Ok([0, 1, 2, 3].map(|i| coarse[i] / fine[i]))
}

/// `max |F'(x) - L F(L^-1 x) L^T|` relative to `max |F'(x)|`, where `F'` are
/// the fields of the boosted state.
pub fn check_tensor_covariance(
    psi: &MomentumHelicityAmplitude,
    rapidity: ThreeVector,
    xs: &[FourVector],
    spec: &QuadratureSpec,
) -> Result<f64> {
    let boosted = transform(psi, PoincareElement::boost(rapidity))?;
    let before = FieldEvaluator::new(psi, spec, Kernel::Tensor)?;
    let after = FieldEvaluator::new(&boosted, spec, Kernel::Tensor)?;
    let l = boost_matrix(rapidity);
    let linv = l.inverse();
    let mut worst: f64 = 0.0;
    for &x in xs {
        let lhs = after.field(x)?.tensor();
        let f = before.field(linv.apply(x))?.tensor();
        let rhs = l.0 * f * l.0.transpose();
        let scale = lhs.amax().max(rhs.amax()).max(f64::MIN_POSITIVE);
        worst = worst.max((lhs - rhs).amax() / scale);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavepacket::{gaussian_beam_state, gaussian_spherical_state};

    #[test]
    fn closed_form_beam_is_not_an_exact_solution_but_nearly() {
        // Leading-order forms violate Maxwell at relative order eps.
        let p = NarrowPacket::new(100.0, 1.0).unwrap();
        let r = maxwell_residuals(&p, FourVector::new(0.0, 0.1, 0.2, 0.05), 1e-4).unwrap();
        let scale = p.peak() * p.k_av;
        assert!(r.faraday < 0.05 * scale && r.ampere < 0.05 * scale);
    }

    #[test]
    fn second_order_convergence_for_spherical_state() {
        let psi = gaussian_spherical_state(1.0).unwrap();
        let spec = QuadratureSpec { radial_nodes: 16, polar_nodes: 32, azimuthal_nodes: 32, ..Default::default() }.with_tolerance(1e-4);
        let ev = FieldEvaluator::new(&psi, &spec, Kernel::Tensor).unwrap();
        let x = FourVector::new(0.1, 0.3, -0.2, 0.4);
        let a = maxwell_residuals(&ev, x, 0.1).unwrap();
        let b = maxwell_residuals(&ev, x, 0.05).unwrap();
        for r in a.ratios(&b) {
            assert!((r - 4.0).abs() < 0.5, "{r}");
        }
    }

    #[test]
    fn summed_convergence_survives_a_near_zero_coefficient() {
        // div B at the first point has an almost vanishing h^2 term; its own
        // ratio is far from 4 but the sum over points is not.
        let psi = gaussian_spherical_state(1.0).unwrap();
        let spec = QuadratureSpec { radial_nodes: 16, polar_nodes: 32, azimuthal_nodes: 32, ..Default::default() }.with_tolerance(1e-4);
        let ev = FieldEvaluator::new(&psi, &spec, Kernel::Tensor).unwrap();
        let xs = [
            FourVector::new(-0.31003963629305753, -0.4579184038709134, 0.4066619635453217, 0.22777401545215503),
            FourVector::new(0.34722891746753803, -0.2006025160237821, -0.17221527218873112, 0.44688252564901876),
        ];
        let alone = maxwell_residuals(&ev, xs[0], 0.1).unwrap().ratios(&maxwell_residuals(&ev, xs[0], 0.05).unwrap());
        assert!(alone[1] > 10.0, "{alone:?}");
        for r in maxwell_convergence(&ev, &xs, 0.1).unwrap() {
            assert!((r - 4.0).abs() < 0.5, "{r}");
        }
        assert!(maxwell_convergence(&ev, &[], 0.1).is_err());
    }

    #[test]
    fn boost_covariance_of_fields() {
        let psi = gaussian_beam_state(3.0, 1.0).unwrap();
        let spec = QuadratureSpec::default().with_tolerance(1e-4);
        let xs = [FourVector::new(0.0, 0.0, 0.0, 0.0), FourVector::new(0.2, 0.1, -0.3, 0.4)];
        let d = check_tensor_covariance(&psi, ThreeVector::new(0.3, -0.2, 0.4), &xs, &spec).unwrap();
        assert!(d < 1e-5, "{d}");
    }

    #[test]
    fn rejects_bad_step() {
        let p = NarrowPacket::new(10.0, 1.0).unwrap();
        assert!(maxwell_residuals(&p, FourVector::new(0.0, 0.0, 0.0, 0.0), 0.0).is_err());
    }
}
