use thiserror::Error;

/// Everything that can go wrong in a computation.
///
/// Size-limit failures are kept apart from domain failures so front ends can
/// map them to distinct exit statuses.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("validation failed: {0}")]
    Validation(String),

    #[error("multiplication is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("cocycle identity fails at ({g}, {h}, {k})")]
    CocycleIdentity { g: usize, h: usize, k: usize },

    #[error("elements {a} and {b} do not commute")]
    NonCommuting { a: usize, b: usize },

    #[error("size limit exceeded: {what} is {actual}, limit {limit}")]
    SizeLimit {
        what: String,
        actual: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("image is not contained in the kernel; witness {witness:?}")]
    Containment { witness: Vec<i64> },

    #[error("matrix is singular")]
    Singular,

    #[error("division by zero")]
    DivisionByZero,

    #[error("generator {generator}: {reason}")]
    BadGenerator { generator: usize, reason: String },

    #[error("defect at ({g}, {h}) is not a scalar matrix")]
    NotProjective { g: usize, h: usize },

    #[error("defect at ({g}, {h}) is not a root of unity at conductor {conductor}")]
    NotTorsion { g: usize, h: usize, conductor: u64 },

    #[error("quotient is infinite")]
    InfiniteQuotient,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn is_size_limit(&self) -> bool {
        matches!(self, Error::SizeLimit { .. })
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Validation(_) => "validation",
            Error::NotAssociative { .. } => "not_associative",
            Error::CocycleIdentity { .. } => "cocycle_identity",
            Error::NonCommuting { .. } => "non_commuting",
            Error::SizeLimit { .. } => "size_limit",
            Error::Dimension(_) => "dimension",
            Error::Containment { .. } => "containment",
            Error::Singular => "singular",
            Error::DivisionByZero => "division_by_zero",
            Error::BadGenerator { .. } => "bad_generator",
            Error::NotProjective { .. } => "not_projective",
            Error::NotTorsion { .. } => "not_torsion",
            Error::InfiniteQuotient => "infinite_quotient",
            Error::Unsupported(_) => "unsupported",
            Error::Parse(_) => "parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
