use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex {0} appears more than once in a subset")]
    RepeatedVertex(usize),
    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),
    #[error("centre vertex {0} lies in the star set")]
    CentreInSet(usize),
    #[error("subset must be nonempty")]
    EmptySubset,
    #[error("vertex counts differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("a multigraph needs at least two vertices to have pairs (n = {0})")]
    NoPairs(usize),
    #[error("invalid constraint pair: s = {s}, q = {q} (need s >= 2)")]
    InvalidSpec { s: usize, q: u64 },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("graph contains a triangle or a 4-cycle")]
    NotC3C4Free,
    #[error("family has too many labeled members to enumerate ({0})")]
    FamilyTooLarge(String),
    #[error("(s, q) = ({s}, {q}) is not covered by a closed form")]
    Uncovered { s: usize, q: u64 },
    #[error("need n >= s (n = {n}, s = {s})")]
    NTooSmall { n: usize, s: usize },
    #[error("ex(n, {{C3, C4}}) oracle required for n = {0}")]
    MissingOracle(usize),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
