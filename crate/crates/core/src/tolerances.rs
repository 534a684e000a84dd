//! Centralized tolerances.
//!
//! Every threshold used by the invariant checks and the suites lives here so
//! that tests, the `check` subcommand and the library agree on one number.

/// Identities that hold exactly in exact arithmetic (matrix products of a
/// handful of factors, orthogonality, metric preservation).
pub const ALGEBRAIC: f64 = 1e-12;

/// Identities that hold up to a projective sign or that pass through a
/// longer chain of trigonometric evaluations (spinor products, Wigner phases).
pub const PROJECTIVE: f64 = 1e-10;

/// Boost covariance of the field tensor coefficient over random samples.
pub const TENSOR_COVARIANCE: f64 = 1e-9;

/// Unit-vector normalization check.
pub const UNIT_VECTOR: f64 = 1e-12;

/// Lightlike check, relative to the squared energy.
pub const MASSLESS_RELATIVE: f64 = 1e-10;

/// Norm of a state computed by spherical quadrature.
pub const NORM_QUADRATURE: f64 = 1e-8;

/// Norm of a transformed (boosted, rotated, ...) state.
pub const NORM_TRANSFORMED: f64 = 1e-6;

/// Relative agreement of mean four-momenta under covariance.
pub const FOUR_MOMENTUM_COVARIANCE: f64 = 1e-5;

/// Pointwise agreement of amplitude involutions (parity twice).
pub const POINTWISE_AMPLITUDE: f64 = 1e-12;

/// Beam-state closed forms versus quadrature, as a fraction of the peak amplitude.
pub const BEAM_CLOSED_FORM: f64 = 0.03;

/// Grid integrals of energy density / momentum density / wavefunction norms.
pub const GRID_INTEGRAL_RELATIVE: f64 = 0.01;

/// Profile identities and the closed-form value at the origin.
pub const PROFILE_IDENTITY: f64 = 1e-6;

/// Reduced-kernel path versus the full three-dimensional quadrature path.
pub const PROFILE_PATH_AGREEMENT: f64 = 1e-5;

/// Scale invariance of profiles across momentum widths.
pub const SCALE_INVARIANCE: f64 = 1e-7;

/// Reality of the coherent-state expectation (imaginary residue).
pub const REALITY: f64 = 1e-12;

/// Expectation value equals twice the real part of the positive-frequency part.
pub const POSITIVE_FREQUENCY_CONSISTENCY: f64 = 1e-10;

/// Accepted band for the finite-difference convergence ratio r(h)/r(h/2).
pub const MAXWELL_RATIO_CENTER: f64 = 4.0;
pub const MAXWELL_RATIO_BAND: f64 = 0.5;

/// Superposition state with beta = 1 versus half the coherent expectation.
pub const SUPERPOSITION_HALF: f64 = 1e-12;

/// Tail samples below this fraction of the profile peak are treated as noise.
pub const TAIL_NOISE_FLOOR: f64 = 1e-12;

/// Slack allowed when testing that |log-slope| is non-increasing.
pub const SLOPE_MONOTONE_SLACK: f64 = 1e-6;
