//! Validated run configuration and its `# key=value` metadata form.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use photonloc_core::analysis::{SuiteName, TailWindow};
use photonloc_core::fields::{Axis, Component};
use photonloc_core::numerics::QuadratureSpec;
use photonloc_core::wavepacket::{BaseState, StateDescriptor};

use crate::args::{Cli, Command, StateArgs, StateKind};
use crate::CliError;

/// Everything needed to reproduce a run. Output format, destination and
/// thread count are not part of it: they never change the numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum RunConfig {
    State {
        state: StateDescriptor,
        spec: QuadratureSpec,
    },
    Field {
        state: StateDescriptor,
        points: Vec<[f64; 4]>,
        spec: QuadratureSpec,
    },
    Narrow {
        k_av: f64,
        sigma_k: f64,
        points: Vec<[f64; 4]>,
        spec: QuadratureSpec,
    },
    Profile {
        component: Component,
        axis: Axis,
        rho_min: f64,
        rho_max: f64,
        points: usize,
        compare_gaussian: bool,
        cross_check: bool,
        sigma_k: f64,
        spec: QuadratureSpec,
    },
    Check {
        suite: SuiteName,
        seed: u64,
        tolerance_override: Option<f64>,
    },
    Tail {
        component: Component,
        axis: Axis,
        window: TailWindow,
        spec: QuadratureSpec,
    },
    Wigner {
        element: WignerElement,
        k: [f64; 3],
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WignerElement {
    Rotation { axis: [f64; 3], angle: f64 },
    Boost { rapidity: [f64; 3] },
}

fn spec_from(cli: &Cli) -> QuadratureSpec {
    let mut s = QuadratureSpec::default();
    if let Some(k) = cli.kmax {
        s.kappa_max = k;
    }
    if let Some(t) = cli.tol {
        s.tolerance = t;
    }
    if let Some(n) = cli.radial_nodes {
        s.radial_nodes = n;
    }
    if let Some(n) = cli.angular_nodes {
        s.polar_nodes = n;
        s.azimuthal_nodes = n;
    }
    s
}

fn descriptor(a: &StateArgs) -> Result<StateDescriptor, CliError> {
    let base = match (a.kind, a.k_av) {
        (StateKind::Beam, Some(k_av)) => BaseState::Beam { k_av, sigma_k: a.sigma_k },
        (StateKind::Beam, None) => return Err(CliError::Usage("--type beam needs --k-av".into())),
        (StateKind::Spherical, None) => BaseState::Spherical { sigma_k: a.sigma_k },
        (StateKind::Spherical, Some(_)) => return Err(CliError::Usage("--k-av only applies to --type beam".into())),
    };
    Ok(StateDescriptor { base, transforms: a.transforms.clone() })
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<RunConfig, CliError> {
        let spec = spec_from(cli);
        let cfg = match &cli.command {
            Command::State(a) => RunConfig::State { state: descriptor(a)?, spec },
            Command::Field(a) => RunConfig::Field { state: descriptor(&a.state)?, points: a.points.clone(), spec },
            Command::Narrow(a) => RunConfig::Narrow { k_av: a.k_av, sigma_k: a.sigma_k, points: a.points.clone(), spec },
            Command::Profile(a) => RunConfig::Profile {
                component: a.component,
                axis: a.axis,
                rho_min: a.rho_min,
                rho_max: a.rho_max,
                points: a.points,
                compare_gaussian: a.compare_gaussian,
                cross_check: a.cross_check,
                sigma_k: a.sigma_k,
                spec,
            },
            Command::Check(a) => RunConfig::Check { suite: a.suite, seed: cli.seed, tolerance_override: cli.tol },
            Command::Tail(a) => RunConfig::Tail {
                component: a.component,
                axis: a.axis,
                window: TailWindow { rho_min: a.rho_min, rho_max: a.rho_max, points: a.points },
                spec,
            },
            Command::Wigner(a) => {
                let element = match (a.rotation, a.boost) {
                    (Some([x, y, z, angle]), None) => WignerElement::Rotation { axis: [x, y, z], angle },
                    (None, Some(rapidity)) => WignerElement::Boost { rapidity },
                    _ => return Err(CliError::Usage("give exactly one of --rotation, --boost".into())),
                };
                RunConfig::Wigner { element, k: a.k }
            }
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn command(&self) -> &'static str {
        match self {
            RunConfig::State { .. } => "state",
            RunConfig::Field { .. } => "field",
            RunConfig::Narrow { .. } => "narrow",
            RunConfig::Profile { .. } => "profile",
            RunConfig::Check { .. } => "check",
            RunConfig::Tail { .. } => "tail",
            RunConfig::Wigner { .. } => "wigner",
        }
    }

    /// Parameter checks that need no numerics.
    pub fn validate(&self) -> Result<(), CliError> {
        match self {
            RunConfig::State { state, spec } | RunConfig::Field { state, spec, .. } => {
                spec.validate()?;
                state.build()?;
            }
            RunConfig::Narrow { k_av, sigma_k, spec, .. } => {
                spec.validate()?;
                photonloc_core::fields::NarrowPacket::new(*k_av, *sigma_k)?;
            }
            RunConfig::Profile { rho_min, rho_max, points, sigma_k, spec, .. } => {
                spec.validate()?;
                if !(*rho_min >= 0.0 && rho_max > rho_min && rho_max.is_finite()) {
                    return Err(CliError::Usage(format!("need 0 <= rho-min < rho-max, got [{rho_min}, {rho_max}]")));
                }
                if *points < 2 {
                    return Err(CliError::Usage("--points must be at least 2".into()));
                }
                if !(*sigma_k > 0.0 && sigma_k.is_finite()) {
                    return Err(CliError::Usage(format!("--sigma-k must be positive, got {sigma_k}")));
                }
            }
            RunConfig::Check { tolerance_override, .. } => {
                if let Some(t) = tolerance_override {
                    if t.is_nan() || *t < 0.0 {
                        return Err(CliError::Usage(format!("--tol must be non-negative, got {t}")));
                    }
                }
            }
            RunConfig::Tail { window, spec, .. } => {
                spec.validate()?;
                window.rhos()?;
            }
            RunConfig::Wigner { element, k } => {
                if let WignerElement::Rotation { axis, .. } = element {
                    if axis.iter().all(|a| *a == 0.0) {
                        return Err(CliError::Usage("rotation axis must be non-zero".into()));
                    }
                }
                if k.iter().all(|c| *c == 0.0) {
                    return Err(CliError::Usage("--k must be non-zero".into()));
                }
            }
        }
        Ok(())
    }

    /// `(key, value)` pairs; strings bare, everything else as compact JSON.
    pub fn metadata(&self) -> Vec<(String, String)> {
        let Value::Object(map) = serde_json::to_value(self).expect("config serializes") else {
            unreachable!("tagged enum serializes to an object")
        };
        map.into_iter()
            .map(|(k, v)| {
                let s = match v {
                    Value::String(s) => s,
                    other => other.to_string(),
                };
                (k, s)
            })
            .collect()
    }

    /// Inverse of [`RunConfig::metadata`] over the `# key=value` lines of a
    /// CSV; other lines and unknown keys are ignored.
    pub fn from_csv_header(text: &str) -> Result<RunConfig, CliError> {
        let mut map = Map::new();
        for line in text.lines().take_while(|l| l.starts_with('#')) {
            if let Some((k, v)) = line.trim_start_matches('#').trim().split_once('=') {
                let value = serde_json::from_str(v).unwrap_or_else(|_| Value::String(v.to_string()));
                map.insert(k.to_string(), value);
            }
        }
        serde_json::from_value(Value::Object(map)).map_err(|e| CliError::Usage(format!("bad metadata header: {e}")))
    }
}
