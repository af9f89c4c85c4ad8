use std::fmt;

use thiserror::Error;

/// The upper-half-plane parameter that failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Param {
    Alpha,
    S,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Alpha => write!(f, "alpha"),
            Param::S => write!(f, "s"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{param} must lie in the upper half-plane (imaginary part {im} <= 0)")]
    Domain { param: Param, im: f64 },

    #[error("matrix is not conjugate-symmetric: deviation {deviation:e} exceeds {tolerance:e}")]
    Symmetry { deviation: f64, tolerance: f64 },

    #[error("metric block {block} must be positive, got {value}")]
    Positivity { block: &'static str, value: f64 },

    #[error("basis (1, s) is degenerate: Im s = 0")]
    DegenerateBasis,

    #[error("modular element has determinant {det}, expected 1")]
    NotUnimodular { det: i64 },

    #[error("invalid sampler configuration: {0}")]
    Config(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
