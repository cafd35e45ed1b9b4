use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("distance matrix is empty")]
    ZeroPoints,
    #[error("row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry ({i}, {j}) is not a finite number")]
    NonFinite { i: usize, j: usize },
    #[error("diagonal entry ({i}, {i}) is {value}, expected 0")]
    NonZeroDiagonal { i: usize, value: f64 },
    #[error("entry ({i}, {j}) is negative ({value})")]
    NegativeDistance { i: usize, j: usize, value: f64 },
    #[error("distinct points {i} and {j} are at distance 0")]
    ZeroOffDiagonal { i: usize, j: usize },
    #[error("matrix is not symmetric at ({i}, {j}): {a} != {b}")]
    AsymmetricMatrix { i: usize, j: usize, a: f64, b: f64 },
    #[error("triangle inequality violated: |{i}{k}| = {direct} > |{i}{j}| + |{j}{k}| = {detour}")]
    TriangleViolation {
        i: usize,
        j: usize,
        k: usize,
        direct: f64,
        detour: f64,
    },
    #[error("{expected} labels required, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("lambda must be positive, got {0}")]
    NonPositiveLambda(f64),
    #[error("point set is empty")]
    EmptySet,
    #[error("point index {index} out of range for a space of {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("cannot split {n} points into {m} non-empty blocks")]
    BadCardinality { n: usize, m: usize },
    #[error("partition count exceeds threshold")]
    Overflow,
    #[error("relation is empty")]
    EmptyRelation,
    #[error("relation is not a correspondence")]
    NotACorrespondence,
    #[error("about {estimate} correspondences to enumerate, cap is {cap}")]
    SizeThresholdExceeded { estimate: u128, cap: u64 },
    #[error("enumeration exceeded the cap of {cap} search nodes")]
    EnumerationTooLarge { cap: u64 },
    #[error("invalid characteristics: {0}")]
    InvalidCharacteristics(String),
    #[error("invalid lambda grid: {0}")]
    InvalidGrid(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for the errors raised by metric-axiom validation.
    pub fn is_metric_violation(&self) -> bool {
        matches!(
            self,
            Error::NonZeroDiagonal { .. }
                | Error::NegativeDistance { .. }
                | Error::ZeroOffDiagonal { .. }
                | Error::AsymmetricMatrix { .. }
                | Error::TriangleViolation { .. }
        )
    }
}
