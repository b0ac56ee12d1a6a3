use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set must be non-empty")]
    EmptySet,

    #[error("sequence must contain at least one set")]
    EmptySequence,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("element {value} exceeds the universe capacity of {capacity}")]
    Capacity { value: usize, capacity: usize },

    #[error("work limit exceeded: {required} elementary additions needed, limit is {limit}")]
    WorkLimit { required: u64, limit: u64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
