use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("theta1 = {0} is outside the canonical range [0, pi/4]")]
    ThetaOutOfRange(f64),

    #[error("tau = {0} is outside [0, 1]")]
    TauOutOfRange(f64),

    #[error("state is not normalized: sum |amp|^2 = {0}")]
    NotNormalized(f64),

    #[error("non-finite amplitude or component")]
    NonFinite,

    #[error("vector ({x}, {y}, {z}) is not unit norm")]
    NotUnit { x: f64, y: f64, z: f64 },

    #[error("operator is not Hermitian (max |M - M^dagger| = {0:e})")]
    NotHermitian(f64),

    #[error("expectation value has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("3-tangle {0} lies outside [0, 1] beyond tolerance")]
    TangleOutOfRange(f64),

    #[error("grid {n_theta}x{n_phi} needs {cost} evaluations (limit {limit})")]
    GridTooLarge {
        n_theta: usize,
        n_phi: usize,
        cost: u128,
        limit: u128,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
