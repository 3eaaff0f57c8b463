use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomials live over different variable tables")]
    VarTableMismatch,
    #[error("invalid variable table: {0}")]
    InvalidVarTable(String),
    #[error("no value assigned to variable `{0}`")]
    MissingAssignment(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("variable table has no block structure")]
    NoBlocks,
    #[error("polynomial is not homogeneous in block {0}")]
    NotHomogeneous(usize),
    #[error("the zero polynomial has no multidegree")]
    ZeroPolynomial,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid game: {0}")]
    InvalidGame(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("subsets are not pairwise disjoint")]
    Overlap,
    #[error("{n} vertices exceeds the limit of {limit} for global Markov enumeration; use pairwise_markov")]
    TooManyVertices { n: usize, limit: usize },
    #[error("distribution has zero marginal for player {player} strategy {strategy}")]
    BoundaryDistribution { player: usize, strategy: usize },
    #[error("only binary games are supported here (player {0} has {1} strategies)")]
    NotBinary(usize, usize),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("target is outside the image of the payoff map; residual support: {0:?}")]
    NotInImage(Vec<String>),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("{0}")]
    Invalid(String),
    #[error("no sampled points available")]
    NoPoints,
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
