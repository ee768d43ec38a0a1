use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("degenerate partial trace: mask must keep at least one and trace out at least one qubit")]
    DegeneratePartialTrace,

    #[error("subsystem mask has {mask} qubits but the operator acts on {operator}")]
    MaskLength { mask: usize, operator: usize },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("eigendecomposition residual {0:e} exceeds certification bound")]
    EigenResidual(f64),

    #[error("invalid density matrix: {0}")]
    InvalidDensity(String),

    #[error("non-finite entry in {0}")]
    NonFinite(&'static str),

    #[error("angle {value} outside the open interval (-pi/2, pi/2)")]
    AngleOutOfRange { value: f64 },

    #[error("input angle {0} outside [0, pi/2]")]
    InputAngleOutOfRange(f64),

    #[error("mixing weight q = {0} outside [0, 1]")]
    WeightOutOfRange(f64),

    #[error("index {0} outside 0..=3")]
    PauliIndex(u8),

    #[error("rank {rank} outside 1..={dim}")]
    Rank { rank: usize, dim: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
