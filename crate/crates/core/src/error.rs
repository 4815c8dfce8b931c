use thiserror::Error;

/// Everything that can go wrong inside the kernel.
///
/// Parse errors carry a 1-based line/column; every other variant is a
/// mathematical-domain or precondition failure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different coefficient fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("operands belong to different rings")]
    RingMismatch,
    #[error("length mismatch: expected {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("{0} is not defined for the zero element")]
    ZeroInput(&'static str),
    #[error("{0} is not prime or exceeds 2^31")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("invalid monomial ordering: {0}")]
    InvalidOrdering(String),
    #[error("operation requires a global ordering; use the local standard-basis routines instead")]
    NotGlobal,
    #[error("operation requires a local ordering (1 > x_i for every variable)")]
    NotLocal,
    #[error("the set of standard monomials is infinite")]
    InfiniteStaircase,
    #[error("input is not a Groebner basis: {0}")]
    NotGroebnerBasis(String),
    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the point {0} is not an ordinary singularity of multiplicity {1}")]
    NotOrdinary(String, u32),
    #[error("the point {0} does not lie on the curve")]
    PointNotOnCurve(String),
    #[error("the curves share a common component")]
    CommonComponent,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("hypotheses violated: {0}")]
    HypothesesViolated(String),
    #[error("computation did not stabilize: {0}")]
    NoConvergence(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
