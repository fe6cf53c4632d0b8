use thiserror::Error;

use crate::convex::FractionalSelection;
use crate::peel::WHatAttempt;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid point set: {0}")]
    InvalidPoints(String),
    #[error("empty-subset")]
    EmptySubset,
    #[error("index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("not-unit-vector: |v| = {norm}")]
    NotUnitVector { norm: f64 },
    #[error("bad-rank: requested {rank}, allowed 1..={max}")]
    BadRank { rank: usize, max: usize },
    #[error("dim-mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },
    #[error("m-too-large: m = {m} exceeds {available} available points")]
    MTooLarge { m: usize, available: usize },
    #[error("weight-too-small: w0 * n = {product} < 2")]
    WeightTooSmall { product: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no-acceptable-w after {} attempts", trace.len())]
    NoAcceptableW { trace: Vec<WHatAttempt> },
    #[error("not-a-partition: index {index} appears twice")]
    NotAPartition { index: usize },
    #[error("infeasible: m = {m} exceeds |T| = {available}")]
    Infeasible { m: usize, available: usize },
    #[error("solver-stalled after {iterations} iterations")]
    SolverStalled {
        iterations: usize,
        best: Box<FractionalSelection>,
    },
    #[error("too-large-for-exact: cluster of size {size} (limit {limit})")]
    TooLargeForExact { size: usize, limit: usize },
    #[error("exhaustive-too-large: n = {n} (limit {limit})")]
    ExhaustiveTooLarge { n: usize, limit: usize },
    #[error("malformed-3cover: {0}")]
    MalformedThreeCover(String),
    #[error("too-large-for-bruteforce: C({n}, {h}) exceeds {limit}")]
    TooLargeForBruteforce { n: usize, h: usize, limit: u64 },
    #[error("k-too-large: k = {k} > n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("analytic-check-unsupported: component {0} is not Gaussian")]
    AnalyticCheckUnsupported(usize),
    #[error("invalid spec: {0}")]
    InvalidSpec(String),
}
