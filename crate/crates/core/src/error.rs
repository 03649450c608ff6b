use thiserror::Error;

/// Errors raised by the constructions in this crate.
///
/// Checkers that are report-valued (identity checks, axiom checks) never
/// return these; they collect violations instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot compose: target [{left_target}] of the first map differs from source [{right_source}] of the second")]
    Composition {
        left_target: usize,
        right_source: usize,
    },

    #[error("invalid ordinal map: {0}")]
    InvalidOrdinalMap(String),

    #[error("truncation too shallow: need level {required}, have {available}")]
    Truncation { required: usize, available: usize },

    #[error("resource ceiling exceeded while {context}: reached {reached}, limit {limit}")]
    Resource {
        context: String,
        reached: usize,
        limit: usize,
    },

    #[error("object of size {size} exceeds the instance bound {bound}")]
    SizeBound { size: usize, bound: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("operator does not preserve validity: {0}")]
    OperatorClosure(String),

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

pub type Result<T> = std::result::Result<T, Error>;
