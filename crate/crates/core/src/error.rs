use std::io;

use thiserror::Error;

/// Errors raised by constructions, evaluations and exports.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("pole at evaluation point {0}")]
    PoleAtPoint(String),
    #[error("degenerate interval [{lo}, {hi}]: need lo < hi")]
    DegenerateInterval { lo: f64, hi: f64 },
    #[error("polynomial must have degree >= 1 for root search")]
    ConstantPolynomial,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("degenerate configuration: {0}")]
    DegenerateConfig(String),
    #[error("focus coincides with sphere center (m = 0)")]
    FocusAtCenter,
    #[error("direction is not a unit vector (|k| = {0})")]
    NonUnitDirection(f64),
    #[error("exact arithmetic unavailable: {0}")]
    ExactnessUnavailable(String),
    #[error("on-sphere construction requires m^2 = r^2")]
    NotOnSphereCase,
    #[error("tan tau out of [-r/gamma, 0] (tan tau = {tan_tau}, lower bound {lower})")]
    TauOutOfRange { tan_tau: f64, lower: f64 },
    #[error("tan tau = -r/gamma: cross-section radius R is unbounded")]
    BoundaryDegenerate,
    #[error("curve does not lie on the unit cone x^2 + y^2 = z^2")]
    NotOnCone,
    #[error("polynomials are not relatively prime")]
    NotCoprime,
    #[error("value out of range: {0}")]
    OutOfRange(String),
    #[error("residual gate failed: vertex {index} has residual {residual:e} > {limit:e}")]
    ResidualGate {
        index: usize,
        residual: f64,
        limit: f64,
    },
    #[error("sink failure: {0}")]
    SinkFailure(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
