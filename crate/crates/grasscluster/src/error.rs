use thiserror::Error;

/// Errors raised by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("index error: {0}")]
    Index(String),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("cannot mutate at frozen vertex {0}")]
    MutationAtFrozen(String),
    #[error("degenerate seed: {0}")]
    Degenerate(String),
    #[error("non-generic configuration: {0}")]
    NonGeneric(String),
    #[error("invariant violation: {0}")]
    Invariant(String),
    #[error("point not in Q(a,b,c): {0}")]
    NotInQ(String),
    #[error("move not applicable: {0}")]
    MoveNotApplicable(String),
    #[error("graph is not reduced: {0}")]
    NotReduced(String),
    #[error("resource cap exceeded: estimated cost {estimated} > cap {cap}")]
    Resource { estimated: u128, cap: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
