use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("GF(3^n) needs odd n in 1..={max}, got {n}")]
    UnsupportedDegree { n: i64, max: u32 },
    #[error("elements from GF(3^{left}) and GF(3^{right}) cannot be combined")]
    ContextMismatch { left: u32, right: u32 },
    #[error("cannot parse field element {0:?}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("matrix is singular")]
    Singular,
    #[error("the identity has no trace-determined order")]
    Identity,
    #[error("{0} is not an involution")]
    NotInvolution(String),
    #[error("the two points coincide")]
    SamePoint,
    #[error("the two blocks coincide")]
    SameBlock,
    #[error("no Sylow 3-subgroup contains {0}")]
    NotInSylow(String),
    #[error("{0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DesignError {
    #[error("point index {index} out of range for {v} points")]
    PointOutOfRange { index: usize, v: usize },
    #[error("block index {index} out of range for {b} blocks")]
    BlockOutOfRange { index: usize, b: usize },
    #[error("block {block} repeats point {point}")]
    RepeatedPoint { block: usize, point: usize },
    #[error("block {block} has {size} points, expected {expected}")]
    BlockSize { block: usize, size: usize, expected: usize },
    #[error("point {point} lies on {count} blocks, expected {expected}")]
    Replication { point: usize, count: usize, expected: usize },
    #[error("points {0} and {1} lie on {2} common blocks, expected {3}")]
    PairCoverage(usize, usize, usize, usize),
    #[error("parameters v={v} k={k} r={r} admit no integral lambda")]
    NonIntegralLambda { v: usize, k: usize, r: usize },
    #[error("structure has no blocks or fewer than two points")]
    Degenerate,
    #[error("configuration check failed: {0}")]
    Configuration(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReeError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("norm vanishes at non-trivial element {0}")]
    VanishingNorm(String),
    #[error("eta needs a non-zero scalar")]
    ZeroScalar,
    #[error("the two points coincide")]
    SamePoint,
    #[error("q = {q} is outside the supported range for this operation ({allowed})")]
    UnsupportedOrder { q: u32, allowed: &'static str },
    #[error("point id {0} out of range")]
    PointId(usize),
    #[error(transparent)]
    Design(#[from] DesignError),
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
