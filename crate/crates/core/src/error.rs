use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("permutation degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("unknown named group `{0}`")]
    UnknownGroup(String),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("empty generator list")]
    NoGenerators,

    #[error("not a subgroup: generator {0} is not a member of the parent group")]
    NotASubgroup(String),

    #[error("{what} budget exceeded (limit {limit})")]
    Budget { what: &'static str, limit: u64 },

    #[error("action is not faithful (kernel of order {0}); reduce by the kernel first")]
    NotFaithful(u64),

    #[error("group is not transitive on its points")]
    NotTransitive,

    #[error("group is not 2-transitive")]
    NotTwoTransitive,

    #[error("value is not real")]
    NotReal,

    #[error("division by zero")]
    DivisionByZero,

    #[error("set is not intersecting: {0}")]
    NotIntersecting(String),

    #[error("class function is not compatible: {0}")]
    Incompatible(String),

    #[error("ratio bound not applicable: {0}")]
    NoRatioBound(String),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("no certificate found: {0}")]
    Infeasible(String),

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid field parameters: {0}")]
    InvalidField(String),

    #[error("degenerate graph: {0}")]
    Degenerate(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("internal defect: {0}")]
    Defect(String),
}

pub type Result<T> = std::result::Result<T, Error>;
