use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid uniformity k = {0} (need k >= 2)")]
    InvalidUniformity(usize),
    #[error("hypergraph must have at least one vertex")]
    NoVertices,
    #[error("edge {edge:?} has {distinct} distinct vertices, expected {k}")]
    NonUniformEdge { edge: Vec<usize>, distinct: usize, k: usize },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),
    #[error("cannot raise a {from}-uniform hypergraph to power {to}")]
    PowerBelowUniformity { from: usize, to: usize },
    #[error("hypergraph is not a hypertree")]
    NotAHypertree,
    #[error("hypergraph is not a disjoint union of hypertrees")]
    NotAHyperforest,
    #[error("brute-force matching oracle limited to {limit} edges, got {edges}")]
    TooManyEdgesForOracle { edges: usize, limit: usize },
    #[error("subtree catalog exceeds cap of {0} subsets")]
    CatalogTooLarge(usize),
    #[error("spectral operations require k >= 3 (set-spectrum theory fails for graphs)")]
    UniformityTwoUnsupported,
    #[error("generated hypergraph would have {0} vertices (limit {limit})", limit = crate::generate::MAX_GENERATED_VERTICES)]
    GeneratorTooLarge(usize),
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("root finder did not converge: {0}")]
    DidNotConverge(String),
    #[error("no totally nonzero eigenvector found for lambda = {re} + {im}i")]
    NoConvergence { re: f64, im: f64 },
    #[error("vector length {got} does not match vertex count {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("unknown fixture {0:?} (expected H1, H2 or H3)")]
    UnknownFixture(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Numerical failures, as opposed to malformed or out-of-contract input.
    pub fn is_convergence(&self) -> bool {
        matches!(self, Error::DidNotConverge(_) | Error::NoConvergence { .. })
    }
}
