//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("series has zero constant term and is not invertible")]
    NonInvertibleSeries,

    #[error("insufficient precision: have {have} known coefficients, need {need}")]
    InsufficientPrecision { have: usize, need: usize },

    #[error("series is not rational within degree bounds ({num_bound}, {den_bound})")]
    NoRationalFit { num_bound: usize, den_bound: usize },

    #[error("polynomial is reducible over Q: {0}")]
    ReduciblePolynomial(String),

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("no irreducible polynomial found (degree {0})")]
    NoIrreducible(usize),

    #[error("enumeration budget exceeded: {candidates} candidates, budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    #[error("point lies in the excluded or branch locus")]
    BranchLocus,

    #[error("evaluation did not land in the roots of unity (internal inconsistency)")]
    NotRootOfUnity,

    #[error("malformed Wedderburn data: {0}")]
    MalformedWedderburn(String),

    #[error("component dimension {dim} is not a multiple of the matrix size {k}")]
    NonDivisibleRank { dim: usize, k: usize },

    #[error("center element has a zero component (index {0})")]
    ZeroComponent(usize),

    #[error("positive Tate twist {0} is not supported")]
    PositiveTwist(i64),

    #[error("group relation check failed for generator {0}")]
    RelationCheck(usize),

    #[error("coefficient is not {p}-integral")]
    NonIntegralCoefficient { p: u64 },

    #[error("series vanishes mod {p} up to the working precision; Weierstrass degree is indeterminate")]
    IndeterminateDegree { p: u64 },

    #[error("complex is invalid: {0}")]
    InvalidComplex(String),

    #[error("semisimplicity at 0 fails in degree {degree}; euler characteristic is undefined")]
    SemisimplicityMissing { degree: i64 },

    #[error("point-count cache is corrupt: {0}")]
    CorruptCache(String),

    #[error("scenario error: {0}")]
    Scenario(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
