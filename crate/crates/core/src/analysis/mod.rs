//! Tail characterization of the spherical-state profiles and the invariant
//! suites.

pub mod suite;
pub mod tail;

pub use suite::{run_suite, CheckResult, SuiteName, SuiteOptions, SuiteReport, DEFAULT_SEED};
pub use tail::{
    envelope_of, fit_tail_models, log_slope, tail_envelope, tail_report, tail_report_from_curve, EnvelopePoint,
    ExponentialFit, PowerLawFit, SlopePoint, StretchedFit, TailFits, TailModel, TailReport, TailWindow,
};
