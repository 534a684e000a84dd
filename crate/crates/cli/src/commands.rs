//! Command execution. Each command returns JSON and a table; rendering is
//! left to the caller.

use serde_json::json;

use photonloc_core::analysis::{run_suite, tail_report, SuiteOptions};
use photonloc_core::fields::{profile, profile_with_cross_check, reduced_profile_value, FieldEvaluator, FieldSample, Kernel, NarrowPacket};
use photonloc_core::poincare::{wigner_boost_angle, wigner_boost_oracle, wigner_rotation_angle, wigner_rotation_oracle};
use photonloc_core::spacetime::{boost_matrix, FourVector, Rotation, ThreeVector};
use photonloc_core::tolerances::PROJECTIVE;
use photonloc_core::wavepacket::{gaussian_beam_state, moments};

use crate::config::{RunConfig, WignerElement};
use crate::output::{Cell, Output, Table};
use crate::CliError;

const FIELD_COLUMNS: [&str; 6] = ["ex", "ey", "ez", "bx", "by", "bz"];

pub fn execute(cfg: &RunConfig) -> Result<Output, CliError> {
    match cfg {
        RunConfig::State { state, spec } => {
            let m = moments(&state.build()?, spec)?;
            let p = m.four_momentum;
            let h = m.mean_helicity()?;
            let mut t = Table::new(&["quantity", "value"]);
            for (k, v) in [
                ("norm", m.norm),
                ("energy", p.t),
                ("momentum_x", p.x),
                ("momentum_y", p.y),
                ("momentum_z", p.z),
                ("mean_helicity", h),
                ("error_estimate", m.error_estimate),
            ] {
                t.push(vec![k.into(), v.into()]);
            }
            Ok(Output {
                result: json!({
                    "norm": m.norm,
                    "four_momentum": p.to_array(),
                    "mean_helicity": h,
                    "error_estimate": m.error_estimate,
                }),
                table: t,
                passed: true,
            })
        }
        RunConfig::Field { state, points, spec } => {
            let ev = FieldEvaluator::new(&state.build()?, spec, Kernel::Tensor)?;
            let xs: Vec<FourVector> = points.iter().map(|p| FourVector::from_array(*p)).collect();
            let samples = ev.fields(&xs)?;
            let mut t = Table::new(&["t", "x", "y", "z", "ex", "ey", "ez", "bx", "by", "bz", "error"]);
            for s in &samples {
                let mut row: Vec<Cell> = s.x.to_array().into_iter().map(Cell::from).collect();
                row.extend(s.components().into_iter().map(Cell::from));
                row.push(s.error_estimate.into());
                t.push(row);
            }
            let result: Vec<_> = samples.iter().map(sample_json).collect();
            Ok(Output { result: json!({ "samples": result }), table: t, passed: true })
        }
        RunConfig::Narrow { k_av, sigma_k, points, spec } => narrow(*k_av, *sigma_k, points, spec),
        RunConfig::Profile { component, axis, rho_min, rho_max, points, compare_gaussian, cross_check, sigma_k, spec } => {
            let n = *points;
            let rhos: Vec<f64> = (0..n).map(|i| rho_min + (rho_max - rho_min) * i as f64 / (n - 1) as f64).collect();
            let curve = if *cross_check {
                profile_with_cross_check(*component, *axis, &rhos, *sigma_k, spec)?
            } else {
                profile(*component, *axis, &rhos, spec)?
            };
            let e0 = if *compare_gaussian { Some(reduced_profile_value(*component, *axis, 0.0, spec)?.value) } else { None };
            let mut cols = vec!["rho", "value", "error"];
            if *cross_check {
                cols.push("general");
            }
            if e0.is_some() {
                cols.push("gaussian");
            }
            let mut t = Table::new(&cols);
            for s in &curve.samples {
                let mut row = vec![s.rho.into(), s.value.into(), s.error_estimate.into()];
                if *cross_check {
                    row.push(s.general.map_or(Cell::Empty, Cell::Num));
                }
                if let Some(e0) = e0 {
                    row.push((e0 * (-s.rho * s.rho / 4.0).exp()).into());
                }
                t.push(row);
            }
            if let Some(d) = curve.path_disagreement() {
                t.meta("path_disagreement", format!("{d:.3e}"));
            }
            Ok(Output { result: serde_json::to_value(&curve).expect("curve serializes"), table: t, passed: true })
        }
        RunConfig::Check { suite, seed, tolerance_override } => {
            let r = run_suite(*suite, &SuiteOptions { seed: *seed, tolerance_override: *tolerance_override });
            let mut t = Table::new(&["name", "passed", "deviation", "tolerance", "note"]);
            for c in &r.checks {
                t.push(vec![
                    c.name.as_str().into(),
                    c.passed.into(),
                    c.deviation.into(),
                    c.tolerance.into(),
                    c.note.as_deref().map_or(Cell::Empty, Cell::from),
                ]);
            }
            t.meta("all_passed", r.all_passed());
            Ok(Output { passed: r.all_passed(), result: serde_json::to_value(&r).expect("report serializes"), table: t })
        }
        RunConfig::Tail { component, axis, window, spec } => {
            let r = tail_report(*component, *axis, *window, spec)?;
            let mut t = Table::new(&["rho", "envelope", "log_slope"]);
            for (i, p) in r.envelope.iter().enumerate() {
                // Slopes exist at interior envelope points only.
                let s = if i == 0 { None } else { r.slopes.get(i - 1).filter(|s| s.rho == p.rho) };
                t.push(vec![p.rho.into(), p.value.into(), s.map_or(Cell::Empty, |s| Cell::Num(s.slope))]);
            }
            t.meta("monotone_decay", r.monotone_decay);
            t.meta("slope_magnitude_nonincreasing", r.slope_magnitude_nonincreasing);
            t.meta("sub_exponential", r.sub_exponential());
            t.meta("fits", serde_json::to_string(&r.fits).expect("fits serialize"));
            Ok(Output { passed: r.sub_exponential(), result: serde_json::to_value(&r).expect("report serializes"), table: t })
        }
        RunConfig::Wigner { element, k } => wigner(element, *k),
    }
}

fn sample_json(s: &FieldSample) -> serde_json::Value {
    json!({
        "x": s.x.to_array(),
        "e": s.e.to_array(),
        "b": s.b.to_array(),
        "error_estimate": s.error_estimate,
    })
}

fn narrow(k_av: f64, sigma_k: f64, points: &[[f64; 4]], spec: &photonloc_core::numerics::QuadratureSpec) -> Result<Output, CliError> {
    let p = NarrowPacket::new(k_av, sigma_k)?;
    let ev = FieldEvaluator::new(&gaussian_beam_state(k_av, sigma_k)?, spec, Kernel::Tensor)?;
    let xs: Vec<FourVector> = points.iter().map(|p| FourVector::from_array(*p)).collect();
    let quad = ev.fields(&xs)?;
    let peak = p.peak();
    let mut cols = vec!["t", "x", "y", "z"];
    let closed_cols: Vec<String> = FIELD_COLUMNS.iter().map(|c| format!("{c}_closed")).collect();
    let quad_cols: Vec<String> = FIELD_COLUMNS.iter().map(|c| format!("{c}_quadrature")).collect();
    cols.extend(closed_cols.iter().map(String::as_str));
    cols.extend(quad_cols.iter().map(String::as_str));
    cols.extend(["delta_rel_peak", "e_dot_b_closed", "e_dot_b_quadrature"]);
    let mut t = Table::new(&cols);
    let mut samples = Vec::new();
    for (x, q) in xs.iter().zip(&quad) {
        let c = p.fields(*x);
        let (a, b) = (c.components(), q.components());
        let delta = a.iter().zip(&b).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max) / peak;
        // E.B in units of peak^2; the closed form has B perpendicular to E.
        let (dc, dq) = (c.e.dot(c.b) / (peak * peak), q.e.dot(q.b) / (peak * peak));
        let mut row: Vec<Cell> = x.to_array().into_iter().map(Cell::from).collect();
        row.extend(a.into_iter().map(Cell::from));
        row.extend(b.into_iter().map(Cell::from));
        row.extend([delta.into(), dc.into(), dq.into()]);
        t.push(row);
        samples.push(json!({
            "x": x.to_array(),
            "closed_form": sample_json(&c),
            "quadrature": sample_json(q),
            "delta_rel_peak": delta,
            "e_dot_b_closed": dc,
            "e_dot_b_quadrature": dq,
        }));
    }
    t.meta("peak", format!("{peak:.16e}"));
    t.meta("epsilon", sigma_k / k_av);
    Ok(Output {
        result: json!({ "peak": peak, "epsilon": sigma_k / k_av, "samples": samples }),
        table: t,
        passed: true,
    })
}

fn wigner(element: &WignerElement, k: [f64; 3]) -> Result<Output, CliError> {
    let kv = ThreeVector::from_array(k);
    let k4 = FourVector::massless(kv);
    let (w, oracle, moved) = match *element {
        WignerElement::Rotation { axis, angle } => {
            let axis = ThreeVector::from_array(axis)
                .normalized()
                .ok_or_else(|| CliError::Usage("rotation axis must be non-zero and finite".into()))?;
            let r = Rotation::new(axis, angle)?;
            (wigner_rotation_angle(&r, k4)?, wigner_rotation_oracle(&r, kv), r.apply(kv))
        }
        WignerElement::Boost { rapidity } => {
            let z = ThreeVector::from_array(rapidity);
            let (o, _) = wigner_boost_oracle(z, k4)?;
            (wigner_boost_angle(z, k4)?, o, boost_matrix(z).apply(k4).spatial())
        }
    };
    let distance = w.distance(&oracle);
    // Adding zero turns -0 into 0 in the printout.
    let (angle, oracle_angle) = (w.angle() + 0.0, oracle.angle() + 0.0);
    let (plus, minus) = (w.helicity_factor(1), w.helicity_factor(-1));
    let mut t = Table::new(&["quantity", "value"]);
    for (name, v) in [
        ("w", angle),
        ("phase_plus_re", plus.re),
        ("phase_plus_im", plus.im),
        ("phase_minus_re", minus.re),
        ("phase_minus_im", minus.im),
        ("oracle_w", oracle_angle),
        ("oracle_distance", distance),
        ("k_out_x", moved.x),
        ("k_out_y", moved.y),
        ("k_out_z", moved.z),
    ] {
        t.push(vec![name.into(), v.into()]);
    }
    let passed = distance <= PROJECTIVE;
    t.meta("oracle_agrees", passed);
    Ok(Output {
        result: json!({
            "w": angle,
            "phase_plus": [plus.re, plus.im],
            "phase_minus": [minus.re, minus.im],
            "oracle_w": oracle_angle,
            "oracle_distance": distance,
            "k_out": moved.to_array(),
        }),
        table: t,
        passed,
    })
}
