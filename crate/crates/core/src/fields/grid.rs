//! Position-space integrals on a cubic grid.
//!
//! Fields on the whole grid come from a tensor-product momentum rule, where
//! `exp(i k . x)` factorizes and the mode sum runs as three one-dimensional
//! passes. A spherical-node table would need one full pass per grid point,
//! which is out of reach for `96^3` points.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::modes::Kernel;
use super::narrow::NarrowPacket;
use crate::error::{invalid, Error, Result};
use crate::numerics::gauss_legendre;
use crate::polarization::Helicity;
use crate::spacetime::ThreeVector;
use crate::wavepacket::HelicityAmplitude;

type C = Complex64;

/// Cubic position grid and the momentum lattice feeding it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GridSpec {
    /// Points per dimension, endpoints included.
    pub points: usize,
    /// Half-width in units of `sigma_x = 1 / (2 scale)`.
    pub half_width_sigma_x: f64,
    /// Momentum nodes per dimension before grading; a multiple of
    /// [`LATTICE_PANEL_NODES`].
    pub lattice_points: usize,
    /// Lattice half-width in units of the state's momentum scale.
    pub lattice_half_width: f64,
    /// Geometric refinement levels toward `k = 0` when the lattice box
    /// touches the `-k_z` half-axis.
    pub grading_levels: usize,
    /// Relative tolerance on the grid-refinement estimate.
    pub tolerance: f64,
}

/// Gauss-Legendre nodes per lattice panel.
pub const LATTICE_PANEL_NODES: usize = 4;

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points: 96,
            half_width_sigma_x: 8.0,
            lattice_points: 64,
            lattice_half_width: 8.0,
            grading_levels: 6,
            tolerance: 1e-2,
        }
    }
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        if self.points < 8 || self.lattice_points < 2 * LATTICE_PANEL_NODES {
            return Err(invalid("grid needs at least 8 points and the lattice two panels per dimension"));
        }
        if !self.lattice_points.is_multiple_of(LATTICE_PANEL_NODES) {
            return Err(invalid(format!("lattice_points must be a multiple of {LATTICE_PANEL_NODES}")));
        }
        if !(self.half_width_sigma_x > 0.0 && self.lattice_half_width > 0.0) {
            return Err(invalid("grid half-widths must be positive"));
        }
        if !(self.tolerance > 0.0 && self.tolerance < 1.0) {
            return Err(invalid("grid tolerance must lie in (0, 1)"));
        }
        Ok(())
    }
}

/// Composite Gauss-Legendre rule on `[a, b]` with `panels` equal panels.
/// With `graded`, zero becomes a breakpoint and the panels next to it are
/// split geometrically `levels` times: the polarization phase winds around
/// the `-k_z` axis and `sqrt(omega)` has a kink at the origin, and only
/// panel edges on those sets keep the tensor rule accurate.
fn lattice_rule(a: f64, b: f64, panels: usize, graded: bool, levels: usize) -> (Vec<f64>, Vec<f64>) {
    let d = (b - a) / panels as f64;
    let mut cuts: Vec<f64> = (0..=panels).map(|i| a + i as f64 * d).collect();
    if graded && a < 0.0 && b > 0.0 {
        cuts.push(0.0);
        for j in 1..=levels {
            let r = d / 2f64.powi(j as i32);
            cuts.extend([r, -r].into_iter().filter(|c| *c > a && *c < b));
        }
    }
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-14 * d);
    let rule = gauss_legendre(LATTICE_PANEL_NODES);
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    for w in cuts.windows(2) {
        let (mid, half) = (0.5 * (w[0] + w[1]), 0.5 * (w[1] - w[0]));
        for (x, wt) in rule.nodes.iter().zip(&rule.weights) {
            nodes.push(mid + half * x);
            weights.push(half * wt);
        }
    }
    (nodes, weights)
}

/// Six-slot values of one kernel on the cubic grid, `x` slowest.
#[derive(Clone, Debug)]
pub struct LatticeFields {
    pub t: f64,
    pub center: ThreeVector,
    /// Grid offsets along each axis (shared by all three).
    pub offsets: Vec<f64>,
    pub values: Vec<[C; 6]>,
    pub kernel: Kernel,
}

impl LatticeFields {
    fn m(&self) -> usize {
        self.offsets.len()
    }

    pub fn point(&self, ix: usize, iy: usize, iz: usize) -> ThreeVector {
        self.center + ThreeVector::new(self.offsets[ix], self.offsets[iy], self.offsets[iz])
    }

    pub fn value(&self, ix: usize, iy: usize, iz: usize) -> [C; 6] {
        let m = self.m();
        self.values[(ix * m + iy) * m + iz]
    }

    /// Trapezoid integral of `g` over the full grid and over the stride-2
    /// subgrid; the difference is the reported error.
    pub fn integrate<const K: usize>(&self, g: impl Fn(&[C; 6]) -> [f64; K] + Sync) -> ([f64; K], f64) {
        let full = self.trapezoid(&g, 1);
        let sub = self.trapezoid(&g, 2);
        let err = full.iter().zip(&sub).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        (full, err)
    }

    fn trapezoid<const K: usize>(&self, g: &(impl Fn(&[C; 6]) -> [f64; K] + Sync), stride: usize) -> [f64; K] {
        let m = self.m();
        let idx: Vec<usize> = (0..m).step_by(stride).collect();
        let h = (self.offsets[1] - self.offsets[0]) * stride as f64;
        let last = idx.len() - 1;
        let w1: Vec<f64> = (0..idx.len()).map(|i| if i == 0 || i == last { 0.5 * h } else { h }).collect();
        let planes: Vec<[f64; K]> = idx
            .par_iter()
            .enumerate()
            .map(|(a, &ix)| {
                let mut acc = [0.0; K];
                for (b, &iy) in idx.iter().enumerate() {
                    for (c, &iz) in idx.iter().enumerate() {
                        let w = w1[a] * w1[b] * w1[c];
                        let v = g(&self.value(ix, iy, iz));
                        for (s, vi) in acc.iter_mut().zip(v) {
                            *s += w * vi;
                        }
                    }
                }
                acc
            })
            .collect();
        planes.iter().fold([0.0; K], |mut s, p| {
            for (a, b) in s.iter_mut().zip(p) {
                *a += b;
            }
            s
        })
    }
}

/// Evaluates one kernel on the cubic grid around `center` at time `t`.
pub fn lattice_fields(
    psi: &dyn HelicityAmplitude,
    t: f64,
    center: ThreeVector,
    grid: &GridSpec,
    kernel: Kernel,
) -> Result<LatticeFields> {
    grid.validate()?;
    let sup = psi.support();
    let sigma_x = 0.5 / sup.scale;
    let m = grid.points;
    let half = grid.half_width_sigma_x * sigma_x;
    let dx = 2.0 * half / (m - 1) as f64;
    let offsets: Vec<f64> = (0..m).map(|i| -half + i as f64 * dx).collect();

    let l = grid.lattice_half_width * sup.scale;
    let c = sup.center;
    // The box touches the -k_z half-axis (origin included).
    let graded = c.x.abs() < l && c.y.abs() < l && c.z - l < 0.0;
    let panels = grid.lattice_points / LATTICE_PANEL_NODES;
    let (kx, wx) = lattice_rule(c.x - l, c.x + l, panels, graded, grid.grading_levels);
    let (ky, wy) = lattice_rule(c.y - l, c.y + l, panels, graded, grid.grading_levels);
    let (kz, wz) = lattice_rule(c.z - l, c.z + l, panels, graded, grid.grading_levels);
    let (nx, ny, nz) = (kx.len(), ky.len(), kz.len());
    let norm = kernel.normalization();

    // Coefficients with exp(i k . center - i omega t) folded in.
    let coef: Vec<[C; 6]> = (0..nx * ny * nz)
        .into_par_iter()
        .map(|idx| {
            let (i, j, q) = (idx / (ny * nz), (idx / nz) % ny, idx % nz);
            let k = ThreeVector::new(kx[i], ky[j], kz[q]);
            let omega = k.norm();
            let mut c = [C::new(0.0, 0.0); 6];
            if omega == 0.0 {
                return c;
            }
            let ph = C::from_polar(wx[i] * wy[j] * wz[q] * norm, k.dot(center) - omega * t);
            for h in Helicity::BOTH {
                let a = psi.eval(k, h);
                if a == C::new(0.0, 0.0) {
                    continue;
                }
                for (ci, v) in c.iter_mut().zip(kernel.coefficient(k, h, a * ph)) {
                    *ci += v;
                }
            }
            c
        })
        .collect();

    let phases = |ks: &[f64]| -> Vec<C> {
        let mut out = Vec::with_capacity(m * ks.len());
        for &x in &offsets {
            for &k in ks {
                out.push(C::from_polar(1.0, k * x));
            }
        }
        out
    };
    let (px, py, pz) = (phases(&kx), phases(&ky), phases(&kz));
    let zero = [C::new(0.0, 0.0); 6];

    // Pass 1: sum over kx.
    let a1: Vec<[C; 6]> = (0..m)
        .into_par_iter()
        .flat_map_iter(|ix| {
            let mut plane = vec![zero; ny * nz];
            for jx in 0..nx {
                let p = px[ix * nx + jx];
                let src = &coef[jx * ny * nz..(jx + 1) * ny * nz];
                for (d, s) in plane.iter_mut().zip(src) {
                    for q in 0..6 {
                        d[q] += p * s[q];
                    }
                }
            }
            plane
        })
        .collect();
    // Pass 2: sum over ky.
    let a2: Vec<[C; 6]> = (0..m)
        .into_par_iter()
        .flat_map_iter(|ix| {
            let src = &a1[ix * ny * nz..(ix + 1) * ny * nz];
            let mut plane = vec![zero; m * nz];
            for iy in 0..m {
                let row = &mut plane[iy * nz..(iy + 1) * nz];
                for jy in 0..ny {
                    let p = py[iy * ny + jy];
                    for (d, s) in row.iter_mut().zip(&src[jy * nz..(jy + 1) * nz]) {
                        for q in 0..6 {
                            d[q] += p * s[q];
                        }
                    }
                }
            }
            plane
        })
        .collect();
    // Pass 3: sum over kz.
    let values: Vec<[C; 6]> = (0..m)
        .into_par_iter()
        .flat_map_iter(|ix| {
            let mut plane = vec![zero; m * m];
            for iy in 0..m {
                let src = &a2[(ix * m + iy) * nz..(ix * m + iy + 1) * nz];
                for iz in 0..m {
                    let d = &mut plane[iy * m + iz];
                    for (jz, s) in src.iter().enumerate() {
                        let p = pz[iz * nz + jz];
                        for q in 0..6 {
                            d[q] += p * s[q];
                        }
                    }
                }
            }
            plane
        })
        .collect();
    Ok(LatticeFields { t, center, offsets, values, kernel })
}

/// Energy, momentum and Riemann-Silberstein integrals of the coherent fields.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridIntegrals {
    /// `int (E^2 + B^2) / 2`.
    pub energy: f64,
    /// `int E x B`.
    pub poynting: ThreeVector,
    /// `int (|F_+|^2 + |F_-|^2)`.
    pub riemann_silberstein: f64,
    pub error_estimate: f64,
    pub converged: bool,
}

/// Sipe, Landau-Peierls and Riemann-Silberstein space integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WavefunctionNorms {
    /// `int |Psi|^2`.
    pub sipe: f64,
    /// `int (|E_LP|^2 + |B_LP|^2) / 2`.
    pub landau_peierls: f64,
    pub riemann_silberstein: f64,
    pub error_estimate: f64,
}

fn tensor_integrand(v: &[C; 6]) -> [f64; 5] {
    let e = ThreeVector::new(2.0 * v[0].re, 2.0 * v[1].re, 2.0 * v[2].re);
    let b = ThreeVector::new(2.0 * v[3].re, 2.0 * v[4].re, 2.0 * v[5].re);
    let s = e.cross(b);
    // |F_+|^2 + |F_-|^2 = |E^(+)|^2 + |B^(+)|^2.
    let rs = v.iter().map(|z| z.norm_sqr()).sum();
    [0.5 * (e.norm_sqr() + b.norm_sqr()), s.x, s.y, s.z, rs]
}

/// Coherent-state energy and momentum on the grid around `center`.
pub fn grid_integrals(psi: &dyn HelicityAmplitude, t: f64, center: ThreeVector, grid: &GridSpec) -> Result<GridIntegrals> {
    let f = lattice_fields(psi, t, center, grid, Kernel::Tensor)?;
    let (v, err) = f.integrate(tensor_integrand);
    let scale = v[0].abs().max(v[4].abs());
    Ok(GridIntegrals {
        energy: v[0],
        poynting: ThreeVector::new(v[1], v[2], v[3]),
        riemann_silberstein: v[4],
        error_estimate: err,
        converged: err <= grid.tolerance * scale,
    })
}

/// All three wavefunction norms on the grid; fails when the refinement
/// estimate exceeds the grid tolerance.
pub fn wavefunction_norms(psi: &dyn HelicityAmplitude, t: f64, center: ThreeVector, grid: &GridSpec) -> Result<WavefunctionNorms> {
    let n2 = |v: &[C; 6]| [v.iter().map(|z| z.norm_sqr()).sum::<f64>()];
    let (sipe, e1) = lattice_fields(psi, t, center, grid, Kernel::Sipe)?.integrate(n2);
    let (lp, e2) = lattice_fields(psi, t, center, grid, Kernel::LandauPeierls)?.integrate(n2);
    let g = grid_integrals(psi, t, center, grid)?;
    let out = WavefunctionNorms {
        sipe: sipe[0],
        landau_peierls: 0.5 * lp[0],
        riemann_silberstein: g.riemann_silberstein,
        error_estimate: e1.max(0.5 * e2).max(g.error_estimate),
    };
    let scale = out.sipe.abs().max(out.landau_peierls.abs()).max(out.riemann_silberstein.abs());
    if out.error_estimate > grid.tolerance * scale {
        return Err(Error::NonConvergence { estimate: out.error_estimate, tolerance: grid.tolerance * scale });
    }
    Ok(out)
}

/// Energy and momentum of the closed-form beam fields on the same grid.
pub fn narrow_packet_grid_integrals(p: &NarrowPacket, t: f64, grid: &GridSpec) -> Result<GridIntegrals> {
    grid.validate()?;
    let m = grid.points;
    let half = grid.half_width_sigma_x * p.sigma_x();
    let dx = 2.0 * half / (m - 1) as f64;
    let center = ThreeVector::Z * t;
    let offsets: Vec<f64> = (0..m).map(|i| -half + i as f64 * dx).collect();
    let values = (0..m * m * m)
        .into_par_iter()
        .map(|i| {
            let x = center + ThreeVector::new(offsets[i / (m * m)], offsets[(i / m) % m], offsets[i % m]);
            let f = p.fields(crate::spacetime::FourVector::from_parts(t, x));
            // Real fields stored as 2 Re of the slots.
            let h = |v: f64| C::new(0.5 * v, 0.0);
            [h(f.e.x), h(f.e.y), h(f.e.z), h(f.b.x), h(f.b.y), h(f.b.z)]
        })
        .collect();
    let f = LatticeFields { t, center, offsets, values, kernel: Kernel::Tensor };
    let (v, err) = f.integrate(tensor_integrand);
    Ok(GridIntegrals {
        energy: v[0],
        poynting: ThreeVector::new(v[1], v[2], v[3]),
        riemann_silberstein: f64::NAN,
        error_estimate: err,
        converged: err <= grid.tolerance * v[0].abs(),
    })
}
