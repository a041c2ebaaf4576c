use thiserror::Error;

/// Errors raised by the speed-limit toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dagger| entry = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:e})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("density matrix trace is {trace}, expected 1")]
    InvalidTrace { trace: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimMismatch { expected: usize, found: usize },

    #[error("argument outside the domain: {0}")]
    Domain(String),

    #[error("Hamiltonian has a single energy level; there is no dynamics")]
    DegenerateHamiltonian,

    #[error(
        "rank {rank} exceeds the smaller multiplicity {max_rank} of the two levels: \
         the support must fit into mutually orthogonal two-dimensional subspaces pairing \
         ground and excited eigenvectors, so a state of this rank cannot saturate the bound"
    )]
    RankBoundViolation { rank: usize, max_rank: usize },

    #[error("pairing vectors are not orthonormal (residual {residual:e})")]
    NonOrthogonalPairing { residual: f64 },

    #[error("pairing vector {index} does not lie in eigenspace of level {level} (residual {residual:e})")]
    NotInEigenspace {
        index: usize,
        level: usize,
        residual: f64,
    },

    #[error("level {level1} (E = {energy1}) must lie strictly above level {level0} (E = {energy0})")]
    LevelOrder {
        level0: usize,
        level1: usize,
        energy0: f64,
        energy1: f64,
    },

    #[error("level index {index} out of range ({levels} levels)")]
    NoSuchLevel { index: usize, levels: usize },

    #[error("expected a qubit, got dimension {dim}")]
    NotQubit { dim: usize },

    #[error("Bloch vector of length {norm} lies outside the unit ball")]
    OutsideBall { norm: f64 },

    #[error("Bloch vectors have different purities ({first} vs {second})")]
    PurityMismatch { first: f64, second: f64 },

    #[error(
        "fidelity {delta} is unreachable for purity {purity}: unitary orbits never go below {min_fidelity}"
    )]
    InfeasibleFidelity {
        delta: f64,
        purity: f64,
        min_fidelity: f64,
    },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
