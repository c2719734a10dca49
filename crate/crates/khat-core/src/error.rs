use khat_groups::GroupError;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum KhatError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("type bases differ: gtype equality requires identical base presentations")]
    BaseMismatch,
    #[error("invalid index subset: {0}")]
    InvalidSubset(String),
    #[error("rank cap exceeded: n = {n} > cap = {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
