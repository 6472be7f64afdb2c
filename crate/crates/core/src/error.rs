//! Error type shared across the crate.

use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("evaluation point must satisfy |z| < 1 (got |z| = {0})")]
    PointOutsideDisk(f64),

    #[error("symbol parameter must lie in the open interval (0, 1), got {0}")]
    InvalidSymbol(f64),

    #[error("(1 - z)^s lies in H^2 only for Re(s) > -1/2, got Re(s) = {0}")]
    ExponentNotInH2(f64),

    #[error("kernel point must satisfy |alpha| < 1 (got |alpha| = {0})")]
    KernelPointOutsideDisk(f64),

    #[error("length mismatch: {scalars} scalars vs {functions} functions")]
    LengthMismatch { scalars: usize, functions: usize },

    #[error("classification needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("w = 1 - a^n is the image of 0, where the counting function is singular")]
    ExcludedPoint,

    #[error("normalization vanishes: |g(1 - a^n)| = {0:.3e} below the division guard")]
    NormalizationVanishes(f64),

    #[error("evaluation functional trivial on span: every orbit member vanishes at z0")]
    EvaluationFunctionalTrivial,

    #[error("zero vector rejected")]
    ZeroVector,

    #[error("quadrature produced a NaN partial sum")]
    QuadratureNan,

    #[error("matrix must be square with finite entries")]
    InvalidMatrix,

    #[error("unknown experiment `{0}`; `list` prints the registry")]
    UnknownExperiment(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error("i/o failure on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
