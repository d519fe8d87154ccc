use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("table has {rows} rows but row {row} has {len} entries")]
    BadDimensions { rows: usize, row: usize, len: usize },

    #[error("table is empty")]
    EmptyTable,

    #[error("not closed: entry ({row}, {col}) = {value} is outside 0..{order}")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },

    #[error("no identity element: no row/column pair acts as the identity")]
    NoIdentity,

    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },

    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("not a Latin square: value {value} repeats in row {row}")]
    NotLatinSquare { row: usize, value: usize },

    #[error(
        "order {order} exceeds the associativity check cap {cap}; construct as trusted to skip it"
    )]
    Unverifiable { order: usize, cap: usize },

    #[error("labels: {0}")]
    BadLabels(String),

    #[error("element {element} is not in the group of order {order}")]
    NoSuchElement { element: usize, order: usize },

    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { element: usize, conjugator: usize },

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("search budget of {budget} exhausted")]
    SearchBudgetExceeded { budget: u64 },

    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("orders {left} and {right} are not coprime")]
    NotCoprime { left: usize, right: usize },

    #[error("invalid group spec: {0}")]
    InvalidSpec(String),

    #[error("{path}: {message}")]
    FileFormat { path: String, message: String },

    #[error("permutation closure exceeds the cap of {cap} elements")]
    ClosureCapExceeded { cap: usize },

    #[error("autocommutator map is not well defined: {0}")]
    IllDefined(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
