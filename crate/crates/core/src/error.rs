use thiserror::Error;

/// Errors raised while building, classifying, solving or parsing structures.
///
/// Row/column indices carried by the variants are 0-based; line numbers are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("set {set}: index {index} out of range (bound {bound})")]
    IndexOutOfRange {
        set: usize,
        index: usize,
        bound: usize,
    },

    #[error("set {set}: index {index} listed twice")]
    DuplicateIndex { set: usize, index: usize },

    #[error("column {col} occurs in no row")]
    EmptyColumnSupport { col: usize },

    #[error("columns {first} and {second} have identical supports")]
    DuplicateColumn { first: usize, second: usize },

    #[error(
        "a structure with {m} rows and {n} columns is not allowed; use 0x0 for the empty structure"
    )]
    DegenerateShape { m: usize, n: usize },

    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("structure is not regular: column sums differ")]
    NotRegular,

    #[error("structure is not linear: rows {0} and {1} share more than one column")]
    NotLinear(usize, usize),

    #[error("block sizes are not uniform")]
    NonUniformBlocks,

    #[error("measured lambda {measured} exceeds requested bound {bound}")]
    LambdaExceeded { measured: usize, bound: usize },

    #[error("not an incomplete design: block size {l} must be smaller than the point count {m}")]
    NotIncomplete { m: usize, l: usize },

    #[error("precondition not met: {0}")]
    PreconditionNotMet(String),

    #[error("instance has {m} rows, the brute-force oracle handles at most {max}")]
    InstanceTooLarge { m: usize, max: usize },

    #[error("unknown catalog design `{0}`")]
    UnknownName(String),

    #[error("order {m} is not {expected}")]
    BadResidue { m: usize, expected: &'static str },

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: negative literal {literal}; only monotone formulas (positive literals) are supported")]
    NegativeLiteral { line: usize, literal: i64 },

    #[error("line {line}: literal {literal} repeated within a clause")]
    DuplicateLiteral { line: usize, literal: i64 },

    #[error("header declares {declared} {what}, body has {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },

    #[error("variable {var} is declared but never occurs")]
    UnusedVariable { var: usize },

    #[error("header declares {what} = {declared}, measured {measured}")]
    HeaderMismatch {
        what: &'static str,
        declared: usize,
        measured: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
