use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: must be at least 2")]
    InvalidModulus(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree of the zero fraction is undefined")]
    ZeroFractionDegree,

    #[error("cannot add -inf and +inf degrees")]
    UndefinedDegreeSum,

    #[error("polynomial in t is not monic")]
    NotMonic,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error(
        "offset {offset}: entry ({}, {}) = {value} does not define a group homomorphism \
         Z/{col_order} -> Z/{row_order}",
        row + 1,
        col + 1
    )]
    InvalidEndomorphism {
        offset: i64,
        row: usize,
        col: usize,
        value: u64,
        row_order: u64,
        col_order: u64,
    },

    #[error("invalid cyclic order {0}: must be at least 2")]
    InvalidGroupOrder(u64),

    #[error("offset {offset} lies outside [-{radius}, {radius}]")]
    OffsetOutOfRange { offset: i64, radius: u32 },

    #[error("invalid job: {0}")]
    InvalidJob(String),
}

impl Error {
    pub(crate) fn parse_at(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}
