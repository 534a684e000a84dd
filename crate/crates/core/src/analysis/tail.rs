//! Envelopes, local log-slopes and model fits for profile tails.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::fields::{profile, Axis, Component, ProfileCurve};
use crate::numerics::QuadratureSpec;
use crate::tolerances::{SLOPE_MONOTONE_SLACK, TAIL_NOISE_FLOOR};

/// Fewest curve samples accepted for envelope extraction.
pub const MIN_WINDOW_POINTS: usize = 40;
/// Fewest envelope points for slopes and for fits.
pub const MIN_SLOPE_POINTS: usize = 5;
pub const MIN_FIT_POINTS: usize = 10;

/// The three-parameter model must beat the best two-parameter one by this
/// factor (plus a small absolute margin) to be preferred.
const PARSIMONY: f64 = 0.9;
const PARSIMONY_ABS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnvelopePoint {
    pub rho: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlopePoint {
    pub rho: f64,
    pub slope: f64,
}

/// Envelope of `|value|` on an ascending grid.
///
/// Without sign changes the envelope is `|value|` itself. Otherwise it is
/// built from the local maxima of `|value|`, each refined by a parabola and
/// lifted by `sqrt(1 + (s / w)^2)`: for `A(rho) cos(w rho)` with growth rate
/// `s = A'/A` the maxima of `|value|` sit where `|cos|` is exactly that much
/// below one. `s` and `w` come from neighbouring maxima.
pub fn envelope_of(rhos: &[f64], values: &[f64]) -> Result<Vec<EnvelopePoint>> {
    if rhos.len() != values.len() {
        return Err(invalid("rho and value lengths differ"));
    }
    if rhos.len() < MIN_WINDOW_POINTS {
        return Err(Error::WindowTooShort(format!("{} points, need at least {MIN_WINDOW_POINTS}", rhos.len())));
    }
    if rhos.windows(2).any(|w| !(w[1] > w[0])) || values.iter().any(|v| !v.is_finite()) {
        return Err(invalid("tail samples must be finite on a strictly ascending grid"));
    }
    let a: Vec<f64> = values.iter().map(|v| v.abs()).collect();
    let peak = a.iter().copied().fold(0.0, f64::max);
    if !(peak > 0.0) {
        return Err(Error::WindowTooShort("no positive envelope".into()));
    }
    let floor = TAIL_NOISE_FLOOR * peak;
    let oscillates = values.windows(2).any(|w| w[0] * w[1] < 0.0);
    if !oscillates {
        return finish(rhos.iter().zip(&a).filter(|(_, v)| **v > floor).map(|(r, v)| EnvelopePoint { rho: *r, value: *v }).collect());
    }

    let mut maxima = Vec::new();
    for i in 1..a.len() - 1 {
        if a[i] >= a[i - 1] && a[i] > a[i + 1] && a[i] > floor {
            maxima.push(parabola_peak([rhos[i - 1], rhos[i], rhos[i + 1]], [a[i - 1], a[i], a[i + 1]]));
        }
    }
    if maxima.len() < 2 {
        return Err(invalid("too few oscillation maxima for an envelope"));
    }
    // Growth rate and angular frequency between consecutive maxima.
    let gaps: Vec<(f64, f64)> = maxima
        .windows(2)
        .map(|w| {
            let d = w[1].rho - w[0].rho;
            ((w[1].value / w[0].value).ln() / d, std::f64::consts::PI / d)
        })
        .collect();
    let n = maxima.len();
    let lifted = maxima
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let (s, w) = match j {
                0 => gaps[0],
                _ if j == n - 1 => gaps[n - 2],
                _ => {
                    let (l, r) = (gaps[j - 1], gaps[j]);
                    (0.5 * (l.0 + r.0), 0.5 * (l.1 + r.1))
                }
            };
            EnvelopePoint { rho: m.rho, value: m.value * (1.0 + (s / w).powi(2)).sqrt() }
        })
        .collect();
    finish(lifted)
}

fn finish(env: Vec<EnvelopePoint>) -> Result<Vec<EnvelopePoint>> {
    if env.is_empty() {
        return Err(Error::WindowTooShort("no positive envelope".into()));
    }
    Ok(env)
}

/// Vertex of the parabola through three points; falls back to the middle
/// sample when the points are collinear.
fn parabola_peak(x: [f64; 3], y: [f64; 3]) -> EnvelopePoint {
    let d1 = (y[1] - y[0]) / (x[1] - x[0]);
    let d2 = (y[2] - y[1]) / (x[2] - x[1]);
    let c = (d2 - d1) / (x[2] - x[0]);
    if c >= 0.0 {
        return EnvelopePoint { rho: x[1], value: y[1] };
    }
    let b = d1 - c * (x[0] + x[1]);
    let xm = (-b / (2.0 * c)).clamp(x[0], x[2]);
    let value = y[0] + d1 * (xm - x[0]) + c * (xm - x[0]) * (xm - x[1]);
    EnvelopePoint { rho: xm, value: value.max(y[1]) }
}

/// Envelope of a profile curve.
pub fn tail_envelope(curve: &ProfileCurve) -> Result<Vec<EnvelopePoint>> {
    envelope_of(&curve.rhos(), &curve.values())
}

/// Centered differences of `log env` against `rho` at the interior points.
pub fn log_slope(env: &[EnvelopePoint]) -> Result<Vec<SlopePoint>> {
    if env.len() < MIN_SLOPE_POINTS {
        return Err(invalid(format!("need at least {MIN_SLOPE_POINTS} envelope points, got {}", env.len())));
    }
    if env.iter().any(|p| !(p.value > 0.0)) {
        return Err(invalid("log-slope of a nonpositive envelope"));
    }
    Ok(env
        .windows(3)
        .map(|w| SlopePoint {
            rho: w[1].rho,
            slope: (w[2].value.ln() - w[0].value.ln()) / (w[2].rho - w[0].rho),
        })
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    Exponential,
    Stretched,
    PowerLaw,
}

/// `log env = a - rho / tau`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExponentialFit {
    pub a: f64,
    pub tau: f64,
    pub residual: f64,
}

/// `log env = a - (rho / tau)^p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StretchedFit {
    pub a: f64,
    pub tau: f64,
    pub p: f64,
    pub residual: f64,
}

/// `log env = a - q log rho`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerLawFit {
    pub a: f64,
    pub q: f64,
    pub residual: f64,
}

/// Residuals are root-mean-square deviations in `log env`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailFits {
    pub exponential: ExponentialFit,
    pub stretched: StretchedFit,
    pub power_law: PowerLawFit,
    pub best: TailModel,
}

/// Least squares `y = a + b x`; returns `(a, b, rms)`.
fn line_fit(x: &[f64], y: &[f64]) -> Result<(f64, f64, f64)> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxx: f64 = x.iter().map(|v| (v - mx).powi(2)).sum();
    if !(sxx > 0.0) || !sxx.is_finite() {
        return Err(Error::DegenerateFit("abscissae do not vary".into()));
    }
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let b = sxy / sxx;
    let a = my - b * mx;
    let ss: f64 = x.iter().zip(y).map(|(u, v)| (v - a - b * u).powi(2)).sum();
    Ok((a, b, (ss / n).sqrt()))
}

fn stretched_at(rho: &[f64], y: &[f64], p: f64) -> Result<StretchedFit> {
    let x: Vec<f64> = rho.iter().map(|r| r.powf(p)).collect();
    let (a, b, residual) = line_fit(&x, y)?;
    let c = -b;
    let tau = if c > 0.0 { c.powf(-1.0 / p) } else { f64::NAN };
    Ok(StretchedFit { a, tau, p, residual })
}

/// Exponential, stretched-exponential and power-law fits of `log env`.
/// The stretched exponent is scanned on `[0.1, 4]` and refined by golden
/// section.
pub fn fit_tail_models(env: &[EnvelopePoint]) -> Result<TailFits> {
    if env.len() < MIN_FIT_POINTS {
        return Err(Error::DegenerateFit(format!("need at least {MIN_FIT_POINTS} envelope points, got {}", env.len())));
    }
    if env.iter().any(|p| !(p.value > 0.0) || !(p.rho > 0.0)) {
        return Err(invalid("fits need positive rho and envelope values"));
    }
    let rho: Vec<f64> = env.iter().map(|p| p.rho).collect();
    let y: Vec<f64> = env.iter().map(|p| p.value.ln()).collect();

    let (a, b, residual) = line_fit(&rho, &y)?;
    let exponential = ExponentialFit { a, tau: -1.0 / b, residual };
    let logs: Vec<f64> = rho.iter().map(|r| r.ln()).collect();
    let (a, b, residual) = line_fit(&logs, &y)?;
    let power_law = PowerLawFit { a, q: -b, residual };

    let mut best_p = 0.1;
    let mut best_r = f64::INFINITY;
    for i in 1..=40 {
        let p = 0.1 * i as f64;
        let r = stretched_at(&rho, &y, p)?.residual;
        if r < best_r {
            best_r = r;
            best_p = p;
        }
    }
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = ((best_p - 0.1).max(0.05), best_p + 0.1);
    for _ in 0..60 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if stretched_at(&rho, &y, m1)?.residual <= stretched_at(&rho, &y, m2)?.residual {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let refined = stretched_at(&rho, &y, 0.5 * (lo + hi))?;
    let stretched = if refined.residual <= best_r { refined } else { stretched_at(&rho, &y, best_p)? };

    let (two, r2) = if power_law.residual < exponential.residual {
        (TailModel::PowerLaw, power_law.residual)
    } else {
        (TailModel::Exponential, exponential.residual)
    };
    let best = if stretched.residual < PARSIMONY * r2 - PARSIMONY_ABS { TailModel::Stretched } else { two };
    Ok(TailFits { exponential, stretched, power_law, best })
}

/// Sampling window for a tail study.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailWindow {
    pub rho_min: f64,
    pub rho_max: f64,
    pub points: usize,
}

impl Default for TailWindow {
    fn default() -> Self {
        TailWindow { rho_min: 8.0, rho_max: 24.0, points: 161 }
    }
}

impl TailWindow {
    pub fn rhos(&self) -> Result<Vec<f64>> {
        if !(self.rho_min >= 0.0 && self.rho_max > self.rho_min && self.rho_max.is_finite()) {
            return Err(invalid(format!("bad tail window [{}, {}]", self.rho_min, self.rho_max)));
        }
        if self.points < MIN_WINDOW_POINTS {
            return Err(Error::WindowTooShort(format!("{} points, need at least {MIN_WINDOW_POINTS}", self.points)));
        }
        let h = (self.rho_max - self.rho_min) / (self.points - 1) as f64;
        Ok((0..self.points).map(|i| self.rho_min + i as f64 * h).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TailReport {
    pub component: Component,
    pub axis: Axis,
    pub window: TailWindow,
    pub envelope: Vec<EnvelopePoint>,
    pub slopes: Vec<SlopePoint>,
    pub monotone_decay: bool,
    pub slope_magnitude_nonincreasing: bool,
    pub fits: TailFits,
}

impl TailReport {
    /// Both flags hold: decaying, and no faster than the local exponential.
    pub fn sub_exponential(&self) -> bool {
        self.monotone_decay && self.slope_magnitude_nonincreasing
    }
}

/// Tail report for an already sampled curve.
pub fn tail_report_from_curve(curve: &ProfileCurve, window: TailWindow) -> Result<TailReport> {
    let envelope = tail_envelope(curve)?;
    let slopes = log_slope(&envelope)?;
    let fits = fit_tail_models(&envelope)?;
    let monotone_decay = envelope.windows(2).all(|w| w[1].value < w[0].value);
    let slope_magnitude_nonincreasing =
        slopes.windows(2).all(|w| w[1].slope.abs() <= w[0].slope.abs() + SLOPE_MONOTONE_SLACK);
    Ok(TailReport {
        component: curve.component,
        axis: curve.axis,
        window,
        envelope,
        slopes,
        monotone_decay,
        slope_magnitude_nonincreasing,
        fits,
    })
}

/// Samples the reduced profile on the window with the tolerance tightened
/// tenfold (node counts already grow with `rho`) and analyses its tail.
pub fn tail_report(component: Component, axis: Axis, window: TailWindow, spec: &QuadratureSpec) -> Result<TailReport> {
    let rhos = window.rhos()?;
    let tight = spec.with_tolerance(spec.tolerance / 10.0);
    let curve = profile(component, axis, &rhos, &tight)?;
    tail_report_from_curve(&curve, window)
}
