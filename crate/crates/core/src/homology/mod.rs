//! Cohomology ranks: exact elimination, cancellation and specialization.

mod bareiss;
mod cancel;
mod field;
mod gauss;
mod report;
mod specialized;
mod strategy;

use thiserror::Error;

pub use bareiss::{clear_row, rank_bareiss};
pub use cancel::{cancellation_reduce, ReducedComplex};
pub use field::FieldElem;
pub use gauss::{rank_exact, rank_gauss};
pub use report::{
    certify, degree_sign, euler_characteristic, Certification, Field, HomologyReport, Mode,
    REPORT_SCHEMA,
};
pub use specialized::{
    draw_exponents, evaluated_ranks, specialize_complex, specialized_ranks, MAX_ATTEMPTS,
};
pub use strategy::{
    cohomology, AutoStrategy, CancelStrategy, EvaluatedStrategy, ExactStrategy, RankStrategy,
    RunOptions, SpecializedStrategy, StrategyRegistry, DEFAULT_EXACT_LIMIT, DEFAULT_SEED,
};

use crate::algebra::AlgebraError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("every specialization in {0} attempts was singular")]
    SpecializationFailed(u64),
    #[error(
        "certification failed and the exact fallback is too large ({size} entries, limit {limit})"
    )]
    FallbackTooLarge { size: usize, limit: usize },
    #[error("unknown rank strategy {0:?}")]
    UnknownStrategy(String),
}
