//! Gauss-Legendre rules and product quadrature on the half line and the ball.
//!
//! Every integral is evaluated twice: once with the configured node counts
//! ("fine") and once with half of them in each dimension ("coarse"). The
//! error estimate is the difference. A result counts as converged when the
//! estimate is below `tolerance * max(|I|, int |f|)`, so integrals that cancel
//! to zero are judged against the size of their integrand.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spacetime::ThreeVector;

/// Nodes and weights on `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn legendre_rule(n: usize) -> GaussRule {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * p - pm) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        // Recompute the derivative at the converged node.
        let (mut p0, mut p1) = (1.0, x);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        if n > 1 {
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    GaussRule { nodes, weights }
}

/// The `n`-point Gauss-Legendre rule, computed once per `n`.
pub fn gauss_legendre(n: usize) -> Arc<GaussRule> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    guard.entry(n).or_insert_with(|| Arc::new(legendre_rule(n))).clone()
}

/// Composite rule on `[0, kmax]` with `panels` equal panels of `nodes` points.
pub fn radial_rule(kmax: f64, panels: usize, nodes: usize) -> (Vec<f64>, Vec<f64>) {
    let g = gauss_legendre(nodes);
    let h = kmax / panels as f64;
    let mut x = Vec::with_capacity(panels * nodes);
    let mut w = Vec::with_capacity(panels * nodes);
    for p in 0..panels {
        let mid = (p as f64 + 0.5) * h;
        for (t, wt) in g.nodes.iter().zip(&g.weights) {
            x.push(mid + 0.5 * h * t);
            w.push(0.5 * h * wt);
        }
    }
    (x, w)
}

fn polar_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    let g = gauss_legendre(n);
    let x = g.nodes.iter().map(|t| 0.5 * PI * (t + 1.0)).collect();
    let w = g.weights.iter().map(|w| 0.5 * PI * w).collect();
    (x, w)
}

fn azimuthal_rule(n: usize) -> (Vec<f64>, f64) {
    let h = 2.0 * PI / n as f64;
    ((0..n).map(|i| i as f64 * h).collect(), h)
}

/// Node counts, truncation and tolerance for all momentum-space integrals.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureSpec {
    /// Radial cutoff in units of the state's momentum scale.
    pub kappa_max: f64,
    pub radial_panels: usize,
    pub radial_nodes: usize,
    pub polar_nodes: usize,
    pub azimuthal_nodes: usize,
    pub tolerance: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            kappa_max: 16.0,
            radial_panels: 8,
            radial_nodes: 32,
            polar_nodes: 64,
            azimuthal_nodes: 64,
            tolerance: 1e-8,
        }
    }
}

/// Which node set of a spec to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    Fine,
    Coarse,
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.kappa_max >= 8.0) || !self.kappa_max.is_finite() {
            return Err(invalid(format!("kappa_max must be at least 8, got {}", self.kappa_max)));
        }
        if self.radial_panels < 1 {
            return Err(invalid("radial_panels must be positive"));
        }
        for (name, n) in [
            ("radial_nodes", self.radial_nodes),
            ("polar_nodes", self.polar_nodes),
            ("azimuthal_nodes", self.azimuthal_nodes),
        ] {
            if n < 4 {
                return Err(invalid(format!("{name} must be at least 4, got {n}")));
            }
        }
        if !(self.tolerance > 1e-14 && self.tolerance < 1e-2) {
            return Err(invalid(format!("tolerance must lie in (1e-14, 1e-2), got {}", self.tolerance)));
        }
        Ok(())
    }

    /// Multiplies every node count by `ceil(factor)`.
    pub fn scaled(&self, factor: f64) -> QuadratureSpec {
        let f = factor.max(1.0).ceil() as usize;
        QuadratureSpec {
            radial_nodes: self.radial_nodes * f,
            polar_nodes: self.polar_nodes * f,
            azimuthal_nodes: self.azimuthal_nodes * f,
            ..*self
        }
    }

    /// Scaling for oscillatory kernels at dimensionless distance `rho`:
    /// node counts grow as `ceil(rho / 6)`. The default counts resolve the
    /// kernel phase `kappa rho / 2` up to `rho = 6` over the Gaussian weight.
    pub fn for_distance(&self, rho: f64) -> QuadratureSpec {
        self.scaled(rho.abs() / 6.0)
    }

    pub fn with_tolerance(&self, tolerance: f64) -> QuadratureSpec {
        QuadratureSpec { tolerance, ..*self }
    }

    fn counts(&self, level: Level) -> (usize, usize, usize) {
        match level {
            Level::Fine => (self.radial_nodes, self.polar_nodes, self.azimuthal_nodes),
            Level::Coarse => (
                (self.radial_nodes / 2).max(2),
                (self.polar_nodes / 2).max(2),
                (self.azimuthal_nodes / 2).max(2),
            ),
        }
    }

    /// Gaussian-weight truncation bound `exp(-kappa_max^2 / 4)`.
    pub fn truncation_bound(&self) -> f64 {
        (-self.kappa_max * self.kappa_max / 4.0).exp()
    }
}

/// Integrand values that can be accumulated by the product rules.
pub trait QuadValue: Copy + Send + Sync {
    fn zero() -> Self;
    fn add_scaled(&mut self, other: &Self, w: f64);
    /// Largest component modulus.
    fn magnitude(&self) -> f64;
    /// Largest component modulus of `self - other`.
    fn distance(&self, other: &Self) -> f64;
}

impl QuadValue for f64 {
    fn zero() -> Self {
        0.0
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += w * other;
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).abs()
    }
}

impl QuadValue for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        *self += other * w;
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn distance(&self, other: &Self) -> f64 {
        (self - other).norm()
    }
}

impl<const N: usize> QuadValue for [f64; N] {
    fn zero() -> Self {
        [0.0; N]
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += w * b;
        }
    }
    fn magnitude(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
    fn distance(&self, other: &Self) -> f64 {
        self.iter().zip(other).fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }
}

impl<const N: usize> QuadValue for [Complex64; N] {
    fn zero() -> Self {
        [Complex64::new(0.0, 0.0); N]
    }
    fn add_scaled(&mut self, other: &Self, w: f64) {
        for (a, b) in self.iter_mut().zip(other) {
            *a += b * w;
        }
    }
    fn magnitude(&self) -> f64 {
        self.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
    fn distance(&self, other: &Self) -> f64 {
        self.iter().zip(other).fold(0.0, |m, (a, b)| m.max((a - b).norm()))
    }
}

/// Value of an integral with its two-level error estimate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationResult<T> {
    pub value: T,
    pub error_estimate: f64,
    /// `int |f|` (largest component), the scale for the convergence test.
    pub magnitude: f64,
    /// Number of node doublings performed after the first estimate.
    pub refinements: u32,
    pub converged: bool,
}

impl<T: QuadValue> IntegrationResult<T> {
    fn from_levels(fine: T, coarse: T, magnitude: f64, tolerance: f64, refinements: u32) -> Self {
        let error_estimate = fine.distance(&coarse);
        let scale = fine.magnitude().max(magnitude);
        IntegrationResult { value: fine, error_estimate, magnitude, refinements, converged: error_estimate <= tolerance * scale }
    }

    /// Converts a non-converged result into [`Error::NonConvergence`].
    pub fn checked(self, tolerance: f64) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence {
                estimate: self.error_estimate,
                tolerance: tolerance * self.value.magnitude().max(self.magnitude),
            })
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> IntegrationResult<U> {
        IntegrationResult {
            value: f(self.value),
            error_estimate: self.error_estimate,
            magnitude: self.magnitude,
            refinements: self.refinements,
            converged: self.converged,
        }
    }
}

fn radial_sum(f: &impl Fn(f64) -> f64, kmax: f64, panels: usize, nodes: usize) -> (f64, f64) {
    let (x, w) = radial_rule(kmax, panels, nodes);
    let mut sum = 0.0;
    let mut abs = 0.0;
    for (xi, wi) in x.iter().zip(&w) {
        let v = f(*xi);
        sum += wi * v;
        abs += wi * v.abs();
    }
    (sum, abs)
}

/// `int_0^kappa_max f` with up to two node doublings; never fails.
pub fn integrate_radial_raw(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> IntegrationResult<f64> {
    let mut nodes = spec.radial_nodes;
    let (mut coarse, _) = radial_sum(&f, spec.kappa_max, spec.radial_panels, (nodes / 2).max(2));
    let mut refinements = 0;
    loop {
        let (fine, abs) = radial_sum(&f, spec.kappa_max, spec.radial_panels, nodes);
        let r = IntegrationResult::from_levels(fine, coarse, abs, spec.tolerance, refinements);
        if r.converged || refinements == 2 {
            return r;
        }
        coarse = fine;
        nodes *= 2;
        refinements += 1;
    }
}

/// `int_0^kappa_max f(kappa) d kappa` by composite Gauss-Legendre.
pub fn integrate_radial(f: impl Fn(f64) -> f64, spec: &QuadratureSpec) -> Result<IntegrationResult<f64>> {
    spec.validate()?;
    integrate_radial_raw(f, spec).checked(spec.tolerance)
}

fn sphere_sum<T: QuadValue>(f: &impl Fn(f64, f64, f64) -> T, spec: &QuadratureSpec, level: Level) -> (T, f64) {
    let (nr, nt, np) = spec.counts(level);
    let (rx, rw) = radial_rule(spec.kappa_max, spec.radial_panels, nr);
    let (tx, tw) = polar_rule(nt);
    let (px, pw) = azimuthal_rule(np);
    let mut total = T::zero();
    let mut abs = 0.0;
    for (r, wr) in rx.iter().zip(&rw) {
        for (t, wt) in tx.iter().zip(&tw) {
            for p in &px {
                let v = f(*r, *t, *p);
                let w = wr * wt * pw;
                total.add_scaled(&v, w);
                abs += w * v.magnitude();
            }
        }
    }
    (total, abs)
}

/// Plain product rule over `[0, kappa_max] x [0, pi] x [0, 2 pi)` without a
/// Jacobian; never fails.
pub fn integrate_sphere_raw<T: QuadValue>(f: impl Fn(f64, f64, f64) -> T, spec: &QuadratureSpec) -> IntegrationResult<T> {
    let (fine, abs) = sphere_sum(&f, spec, Level::Fine);
    let (coarse, _) = sphere_sum(&f, spec, Level::Coarse);
    IntegrationResult::from_levels(fine, coarse, abs, spec.tolerance, 0)
}

/// `int dkappa dtheta dphi f(kappa, theta, phi)`; the caller supplies any
/// Jacobian. Summation order is fixed (kappa, then theta, then phi).
pub fn integrate_sphere<T: QuadValue>(f: impl Fn(f64, f64, f64) -> T, spec: &QuadratureSpec) -> Result<IntegrationResult<T>> {
    spec.validate()?;
    integrate_sphere_raw(f, spec).checked(spec.tolerance)
}

/// Quadrature nodes for `int d^3k` over a ball around `center` of radius
/// `scale * kappa_max`, weights including the Jacobian.
#[derive(Clone, Debug)]
pub struct BallGrid {
    pub points: Vec<ThreeVector>,
    pub weights: Vec<f64>,
}

impl BallGrid {
    pub fn new(center: ThreeVector, scale: f64, spec: &QuadratureSpec, level: Level) -> BallGrid {
        let (nr, nt, np) = spec.counts(level);
        let (rx, rw) = radial_rule(spec.kappa_max, spec.radial_panels, nr);
        let (tx, tw) = polar_rule(nt);
        let (px, pw) = azimuthal_rule(np);
        let trig: Vec<(f64, f64)> = px.iter().map(|p| p.sin_cos()).collect();
        let mut points = Vec::with_capacity(nr * spec.radial_panels * nt * np);
        let mut weights = Vec::with_capacity(points.capacity());
        let s3 = scale * scale * scale;
        for (r, wr) in rx.iter().zip(&rw) {
            for (t, wt) in tx.iter().zip(&tw) {
                let (st, ct) = t.sin_cos();
                let w = wr * wt * pw * r * r * st * s3;
                for &(sp, cp) in &trig {
                    let q = ThreeVector::new(st * cp, st * sp, ct) * (r * scale);
                    points.push(center + q);
                    weights.push(w);
                }
            }
        }
        BallGrid { points, weights }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn integrate<T: QuadValue>(&self, g: &impl Fn(ThreeVector) -> T) -> (T, f64) {
        let mut total = T::zero();
        let mut abs = 0.0;
        for (k, w) in self.points.iter().zip(&self.weights) {
            let v = g(*k);
            total.add_scaled(&v, *w);
            abs += w * v.magnitude();
        }
        (total, abs)
    }
}

/// `int d^3k g(k)` over the ball of radius `scale * kappa_max` around `center`.
/// Returns the result even when the estimate exceeds the tolerance; callers
/// decide via [`IntegrationResult::checked`].
pub fn integrate_ball<T: QuadValue>(
    g: impl Fn(ThreeVector) -> T,
    center: ThreeVector,
    scale: f64,
    spec: &QuadratureSpec,
) -> Result<IntegrationResult<T>> {
    spec.validate()?;
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(invalid(format!("integration scale must be positive, got {scale}")));
    }
    let (fine, abs) = BallGrid::new(center, scale, spec, Level::Fine).integrate(&g);
    let (coarse, _) = BallGrid::new(center, scale, spec, Level::Coarse).integrate(&g);
    Ok(IntegrationResult::from_levels(fine, coarse, abs, spec.tolerance, 0))
}
