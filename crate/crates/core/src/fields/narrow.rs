//! Leading-order closed forms for the positive-helicity beam state.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::FieldSample;
use crate::error::{invalid, Result};
use crate::spacetime::{FourVector, ThreeVector};
use crate::wavepacket::NARROW_EPSILON_LIMIT;

/// Fraction of `(k_av / sigma_k) sigma_x` beyond which spreading is no
/// longer negligible.
const VALIDITY_FRACTION: f64 = 0.1;

/// Closed-form fields of the beam state around `k_av z`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NarrowPacket {
    pub k_av: f64,
    pub sigma_k: f64,
}

impl NarrowPacket {
    pub fn new(k_av: f64, sigma_k: f64) -> Result<Self> {
        if !(k_av > 0.0 && k_av.is_finite() && sigma_k > 0.0 && sigma_k.is_finite()) {
            return Err(invalid(format!("need k_av > 0 and sigma_k > 0, got {k_av}, {sigma_k}")));
        }
        if sigma_k / k_av >= NARROW_EPSILON_LIMIT {
            log::warn!("sigma_k/k_av = {:.3} is outside the narrow-packet regime", sigma_k / k_av);
        }
        Ok(NarrowPacket { k_av, sigma_k })
    }

    pub fn sigma_x(&self) -> f64 {
        0.5 / self.sigma_k
    }

    /// Largest `|t|` for which the closed form is trusted.
    pub fn time_window(&self) -> f64 {
        VALIDITY_FRACTION * self.k_av / self.sigma_k * self.sigma_x()
    }

    /// `sqrt(k_av) (2 pi sigma_x^2)^{-3/4}`.
    pub fn peak(&self) -> f64 {
        let sx = self.sigma_x();
        self.k_av.sqrt() * (2.0 * PI * sx * sx).powf(-0.75)
    }

    /// Gaussian envelope times the peak, and the carrier phase `k_av (z - t)`.
    fn envelope_phase(&self, x: FourVector) -> (f64, f64) {
        let sx = self.sigma_x();
        let d = x.spatial() - ThreeVector::Z * x.t;
        (self.peak() * (-d.norm_sqr() / (4.0 * sx * sx)).exp(), self.k_av * (x.z - x.t))
    }

    pub fn fields(&self, x: FourVector) -> FieldSample {
        let (g, ph) = self.envelope_phase(x);
        let (s, c) = ph.sin_cos();
        FieldSample::from_real(x, ThreeVector::new(g * c, -g * s, 0.0), ThreeVector::new(g * s, g * c, 0.0))
    }
}

/// Closed-form beam fields at `x`; warns outside the validity window.
pub fn narrow_packet_fields(x: FourVector, k_av: f64, sigma_k: f64) -> Result<FieldSample> {
    let p = NarrowPacket::new(k_av, sigma_k)?;
    if x.t.abs() > p.time_window() {
        log::warn!("|t| = {} exceeds the narrow-packet window {}", x.t.abs(), p.time_window());
    }
    Ok(p.fields(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn origin_values() {
        let f = narrow_packet_fields(FourVector::new(0.0, 0.0, 0.0, 0.0), 100.0, 1.0).unwrap();
        let expect = 10.0 * (2.0 * PI * 0.25f64).powf(-0.75);
        assert!((f.e.x - expect).abs() < 1e-13);
        assert_eq!(f.e.y, 0.0);
        assert_eq!(f.b.y, f.e.x);
        assert_eq!(f.b.x, 0.0);
        assert_eq!(f.e.z, 0.0);
        assert_eq!(f.b.z, 0.0);
    }

    #[test]
    fn perpendicular_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = NarrowPacket::new(100.0, 1.0).unwrap();
        for _ in 0..100 {
            let x = FourVector::new(rng.gen_range(-1.0..1.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let f = p.fields(x);
            assert!(f.e.dot(f.b).abs() <= 1e-12 * (1.0 + f.e.norm_sqr()));
        }
    }

    #[test]
    fn quarter_period_shift_swaps_patterns() {
        let p = NarrowPacket::new(50.0, 1.0).unwrap();
        let x = FourVector::new(0.0, 0.1, -0.2, 0.05);
        let dz = PI / (2.0 * p.k_av);
        let a = p.fields(x);
        let b = p.fields(FourVector::new(x.t, x.x, x.y, x.z + dz));
        // Same envelope up to the tiny z shift; compare normalized patterns.
        let (ga, _) = p.envelope_phase(x);
        let (gb, _) = p.envelope_phase(FourVector::new(x.t, x.x, x.y, x.z + dz));
        assert!((b.e.x / gb - a.e.y / ga).abs() < 1e-12);
        assert!((b.e.y / gb - (-a.e.x / ga)).abs() < 1e-12);
    }

    #[test]
    fn energy_density_has_no_carrier() {
        let p = NarrowPacket::new(30.0, 2.0).unwrap();
        let x = FourVector::new(0.0, 0.05, 0.1, 0.2);
        let (g, _) = p.envelope_phase(x);
        assert!((p.fields(x).energy_density() - g * g).abs() < 1e-12 * g * g);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(narrow_packet_fields(FourVector::new(0.0, 0.0, 0.0, 0.0), -1.0, 1.0).is_err());
        assert!(narrow_packet_fields(FourVector::new(0.0, 0.0, 0.0, 0.0), 1.0, 0.0).is_err());
    }
}
