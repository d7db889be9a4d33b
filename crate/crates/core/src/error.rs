use thiserror::Error;

/// Every failure the library can report.
///
/// Variants are grouped by the process exit code the CLI maps them to, see
/// [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("row offsets sum to {rows} but column offsets sum to {cols}")]
    MarginMismatch { rows: i64, cols: i64 },

    #[error("{axis} margin {index} is negative ({value}) at r = {r}")]
    NegativeMargin {
        axis: Axis,
        index: usize,
        value: i64,
        r: i64,
    },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("fixed entry {value} at ({row}, {col}) exceeds its reduced {axis} target")]
    InfeasibleFixed {
        row: usize,
        col: usize,
        value: u64,
        axis: Axis,
    },

    #[error("invalid scoreboard: {0}")]
    InvalidBoard(String),

    #[error("invalid points rule: {0}")]
    InvalidRule(String),

    #[error("validation error in group {group}, field {field}: {message}")]
    Validation {
        group: String,
        field: String,
        message: String,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("counts are not polynomial: {0}")]
    NotPolynomial(String),

    #[error("division by known roots left a nonzero remainder")]
    NonzeroRemainder,

    #[error("singular linear system")]
    SingularSystem,

    #[error(
        "no unique puzzle found after {attempts} attempts{}",
        index.map(|i| format!(" (book index {i})")).unwrap_or_default()
    )]
    ExhaustedAttempts { attempts: u32, index: Option<usize> },

    #[error("comparison failed: {0}")]
    ComparisonFailure(String),

    #[error("resource limit exceeded: {what} (limit {limit})")]
    ResourceLimit { what: &'static str, limit: u64 },

    #[error("i/o error: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Row,
    Column,
}

impl std::fmt::Display for Axis {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Axis::Row => "row",
            Axis::Column => "column",
        })
    }
}

impl Error {
    /// Process exit code: 1 usage/parse, 2 validation, 3 verification or
    /// comparison failure, 4 resource limit.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::InvalidArgument(_) | Error::Io(_) => 1,
            Error::MarginMismatch { .. }
            | Error::NegativeMargin { .. }
            | Error::Shape(_)
            | Error::InfeasibleFixed { .. }
            | Error::InvalidBoard(_)
            | Error::InvalidRule(_)
            | Error::Validation { .. } => 2,
            Error::VerificationFailure(_)
            | Error::NotPolynomial(_)
            | Error::NonzeroRemainder
            | Error::SingularSystem
            | Error::ExhaustedAttempts { .. }
            | Error::ComparisonFailure(_) => 3,
            Error::ResourceLimit { .. } => 4,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
