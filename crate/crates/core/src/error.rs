use thiserror::Error;

/// Errors raised by the library. Messages are prefixed with the module that raised them.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("kf_tensor: index {0:?} out of range (each index must be in 0..=3)")]
    IndexOutOfRange([usize; 4]),
    #[error("kf_tensor: entries for {index:?} imply {existing} and {incoming} for the same canonical slot")]
    SymmetryConflict {
        index: [usize; 4],
        existing: f64,
        incoming: f64,
    },
    #[error("kf_tensor: |{0}| must be < 0.1 to stay perturbative")]
    MagnitudeTooLarge(f64),
    #[error("kf_tensor: non-finite component value {0}")]
    NonFinite(f64),
    #[error("kf_tensor: kappa matrix is not symmetric at ({0}, {1})")]
    AsymmetricKappa(usize, usize),
    #[error("fields: evaluation point coincides with a source point")]
    CoincidentPoints,
    #[error("fields: invalid source sample: {0}")]
    InvalidSource(String),
    #[error("hydrogenic: invalid quantum numbers: {0}")]
    InvalidQuantumNumbers(String),
    #[error("hydrogenic: <r^-{k}> diverges for l = {l}")]
    DivergentExpectation { k: u32, l: u32 },
    #[error("numerics: quadrature did not converge ({0})")]
    QuadratureNotConverged(String),
    #[error("perturbation: eigen-decomposition of the {0}x{0} manifold matrix failed")]
    DiagonalizationFailure(usize),
    #[error("helium: invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("helium: standard error {std_error:e} exceeds budget {budget:e}")]
    MonteCarloNotConverged { std_error: f64, budget: f64 },
    #[error("bounds: shift slope vanishes for {0}")]
    ZeroSlope(String),
    #[error("bounds: accuracy must be positive, got {0}")]
    InvalidAccuracy(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
