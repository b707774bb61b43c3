use thiserror::Error;

/// Errors produced by the numerical kernels and the physics layers built on them.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: String,
        found: String,
    },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("matrix is singular to working precision")]
    Singular,

    #[error("matrix is not diagonalizable (minimal left/right overlap {min_overlap:.3e})")]
    NonDiagonalizable { min_overlap: f64 },

    #[error("eigensolver failed to converge")]
    EigenConvergence,

    #[error("matrix is not hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("matrix has eigenvalue {value:.3e} below the allowed tolerance")]
    NegativeEigenvalue { value: f64 },

    #[error("spectrum is complex (broken PT phase)")]
    BrokenPhase,

    #[error("exceptional point: eigenvectors coalesce")]
    ExceptionalPoint,

    #[error("canonical transformation is ill-conditioned (condition {condition:.3e} > cap {cap:.3e})")]
    IllConditioned { condition: f64, cap: f64 },

    #[error("degenerate spectrum: energies {first} and {second} coincide")]
    DegenerateSpectrum { first: f64, second: f64 },

    #[error("parity relation P|psi_n> = e^(i theta_n)|phi_n> violated (residual {residual:.3e})")]
    NotPtSymmetric { residual: f64 },

    #[error("phase theta_{index} = {theta} is not 0 or pi")]
    PhaseNotQuantized { index: usize, theta: f64 },

    #[error("invalid parity operator: {0}")]
    InvalidParity(String),

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("invalid spectral exponent mu = {mu} (must be > -1)")]
    InvalidExponent { mu: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("quadrature failed: error estimate {estimate:.3e} > tolerance {tol:.3e} after {evaluations} evaluations")]
    QuadratureFailure {
        estimate: f64,
        tol: f64,
        evaluations: usize,
    },

    #[error(
        "initial state inconsistent with the closed-form solution at t = 0 \
         (requires rho11(0) = 1/2 and Re rho12(0) = 0; deviation {deviation:.3e})"
    )]
    InconsistentInitialState { deviation: f64 },

    #[error("composite dimension {dim} exceeds cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("length mismatch: {0}")]
    LengthMismatch(String),

    #[error("operation not supported for this channel representation: {0}")]
    Representation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn dim_mismatch(
    context: &'static str,
    expected: impl ToString,
    found: impl ToString,
) -> Error {
    Error::DimensionMismatch {
        context,
        expected: expected.to_string(),
        found: found.to_string(),
    }
}
