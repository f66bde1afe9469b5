use thiserror::Error;

/// Errors raised by the curve and ring computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("branch count mismatch: {left} vs {right}")]
    BranchCountMismatch { left: usize, right: usize },

    #[error("order of branch {branch} is not determined at the available precision")]
    UnknownOrder { branch: usize },

    #[error("coefficient of t^{exponent} in branch {branch} is beyond the known precision")]
    UnknownCoefficient { branch: usize, exponent: u32 },

    #[error("box mismatch: {left:?} vs {right:?}")]
    BoxMismatch { left: Vec<u32>, right: Vec<u32> },

    #[error("provisional box {box_:?} is too small to certify the conductor")]
    BoxTooSmall { box_: Vec<u32> },

    #[error("branches {first} and {second} carry the same parametrization")]
    NotReduced { first: usize, second: usize },

    #[error("generator {generator} is a unit in branch {branch}; the curve must be local")]
    NonLocal { generator: usize, branch: usize },

    #[error("branch {branch} is not primitively parametrized (all exponents share the factor {factor})")]
    NonPrimitiveBranch { branch: usize, factor: u32 },

    #[error("branch {branch} is zero in every generator")]
    DegenerateBranch { branch: usize },

    #[error("parametrization needs at least one branch")]
    NoBranches,

    #[error("submodule is not closed under multiplication by the ring")]
    NotAnIdeal,

    #[error("rings are not nested")]
    NotNested,

    #[error("normalization chain did not stabilize within {cap} steps")]
    NonTermination { cap: usize },

    #[error("invalid singularity type: {0}")]
    InvalidType(String),

    #[error("not supported: {0}")]
    Unsupported(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
