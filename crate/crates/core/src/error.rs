use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {n} excluded by {reason}")]
    IndexExcluded { n: i64, reason: String },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("singular parameters: {0}")]
    ParameterSingular(String),

    #[error("domain error: {0}")]
    DomainError(String),

    #[error("complex prefactor: {0}")]
    ComplexPrefactor(String),

    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergent(String),

    #[error("series did not converge: {0}")]
    NonConvergent(String),

    #[error("pole in b: M(a, {0}, x) is undefined")]
    PoleInB(f64),

    #[error("gamma pole at {0}")]
    GammaPole(f64),

    #[error("unsupported model: {0}")]
    UnsupportedModel(String),

    #[error("numerical instability: {0}")]
    NumericalInstability(String),
}

pub type Result<T> = std::result::Result<T, Error>;
