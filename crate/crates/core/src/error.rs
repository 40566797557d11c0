use thiserror::Error;

/// Errors raised by the library.
///
/// Domain errors only: every variant describes a bad input object or a
/// violated precondition, never an internal fault.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("point {point} is outside 1..={n}")]
    PointOutOfRange { point: usize, n: usize },

    #[error("point {0} appears more than once")]
    DuplicatePoint(usize),

    #[error("point {0} is not covered by any block")]
    NotCovered(usize),

    #[error("image list is not a bijection on 1..={0}")]
    NotBijection(usize),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("the pair does not generate a transitive group")]
    NotTransitive,

    #[error("expected a permutation of genus {expected}, found genus {found}")]
    WrongGenus { expected: usize, found: usize },

    #[error("permutation is not reduced")]
    NotReduced,

    #[error("partition is crossing")]
    Crossing,

    #[error("invalid coloring points {0:?} for n = {1}")]
    InvalidColoring([usize; 4], usize),

    #[error("invalid separating points {0:?} for n = {1}")]
    InvalidSeparating([usize; 4], usize),

    #[error("({a},{b},{c},{d}) is not a sequence of separating points")]
    NotSeparating {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },

    #[error("{0} is not a trivial cycle of the permutation")]
    NotTrivialCycle(String),

    #[error("cannot split at {a}: {reason}")]
    InvalidSplit { a: usize, reason: &'static str },

    #[error("size {n} exceeds the oracle limit {limit}")]
    LimitExceeded { n: usize, limit: usize },

    #[error("divisor has zero constant term")]
    ZeroConstantTerm,

    #[error("inverse square root needs constant term 1")]
    ConstantTermNotOne,

    #[error("substituted series must have zero constant term")]
    NonzeroXOrder,

    #[error("x-degree {requested} beyond truncation {trunc}")]
    BeyondTruncation { requested: usize, trunc: usize },

    #[error("monomial x^{dx} y^{dy} violates the storage bound deg_y <= deg_x")]
    DegreeBound { dx: usize, dy: usize },

    #[error("coefficient of x^{n} y^{k} is not an integer: {value}")]
    NonInteger { n: usize, k: usize, value: String },

    #[error("unknown series name {0:?}")]
    UnknownSeries(String),

    #[error("cache i/o: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
