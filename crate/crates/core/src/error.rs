use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("permutation orders differ ({left} vs {right})")]
    OrderMismatch { left: usize, right: usize },
    #[error("generator (12)(3{index}) is not defined for n = {n}")]
    GeneratorOutOfRange { index: usize, n: usize },
    #[error("rank {rank} is out of range for n = {n}")]
    RankOutOfRange { rank: u64, n: usize },
    #[error("dimension {0} is not supported (need 3 <= n <= {max})", max = crate::graph::MAX_DIMENSION)]
    UnsupportedDimension(usize),
    #[error("cluster position {m} is out of range for n = {n} (need 4 <= m <= n)")]
    PositionOutOfRange { m: usize, n: usize },
    #[error("vertex {0} is not present in the view")]
    VertexAbsent(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("vertices {0} and {1} are adjacent; a vertex cut is not defined")]
    AdjacentPair(String, String),
    #[error("only {found} of {wanted} disjoint paths exist; cut {cut:?}")]
    TooFewPaths { wanted: usize, found: usize, cut: Vec<String> },
    #[error("terminals are not connected in the view")]
    Disconnected,
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("search budget exhausted after {0} nodes")]
    BudgetExhausted(u64),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
