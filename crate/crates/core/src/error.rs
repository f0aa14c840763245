//! Error types shared across the crate.

use crate::C64;
use thiserror::Error;

/// Errors produced by profile construction, quadrature and the solvers.
#[derive(Debug, Clone, Error)]
pub enum UtmError {
    /// The inferred infimum of the diffusivity is not strictly positive.
    #[error("diffusivity must satisfy b(t) >= b0 > 0 (inferred inf b = {0})")]
    NonPositiveDiffusivity(f64),

    /// Argument outside the invertible range of `B`.
    #[error("argument {0} outside [0, B(T_max)] = [0, {1}]")]
    OutOfRange(f64, f64),

    /// Adaptive quadrature hit the subdivision limit before the tolerance.
    /// Carries the best value and its error estimate so callers may decide.
    #[error("quadrature tolerance not met: err_est = {err_est:.3e}")]
    ToleranceNotMet { value: C64, err_est: f64 },

    /// Tail truncation is degenerate (no decay) at this evaluation point.
    #[error("degenerate decay rate {0}; use the analytic limit instead")]
    DegenerateDecay(f64),

    /// Cached time-transform queried beyond its horizon.
    #[error("t-transform cache covers tau <= {horizon}, requested {requested}")]
    CacheMiss { horizon: f64, requested: f64 },

    /// Contour geometry does not belong to the requested PDE family.
    #[error("contour family {family} is not valid for pde {pde}")]
    UnsupportedFamily { family: String, pde: String },

    /// Numeric half-line transform requested above its analyticity domain.
    #[error("half-line transform of sampled data needs Im k <= 0, got Im k = {0}")]
    TransformDomain(f64),

    /// A quadrature node fell too close to a denominator zero.
    #[error("quadrature node within {dist:.3e} of pole at k = {pole}")]
    PoleProximity { pole: C64, dist: f64 },

    /// Causality substitution requested but C/B is not non-increasing.
    #[error("C(t)/B(t) is not non-increasing on [0, {0}]")]
    CausalityPreconditionFailed(f64),

    /// Fourth-order / biharmonic families are posed with zero initial datum.
    #[error("this family requires u0 = 0")]
    NonzeroInitialDatum,

    /// The tridiagonal / pentadiagonal solve encountered a zero pivot.
    #[error("singular linear system in finite-difference step {0}")]
    SingularSystem(usize),

    /// Problem specification is inconsistent (missing data, bad geometry...).
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    /// Configuration file error with a human-readable location.
    #[error("config error: {0}")]
    Config(String),

    /// I/O wrapper for the harness.
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for UtmError {
    fn from(e: std::io::Error) -> Self {
        UtmError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, UtmError>;
