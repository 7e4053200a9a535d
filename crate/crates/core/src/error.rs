use thiserror::Error;

/// Errors produced by the exact-calculus layers.
///
/// Pole and rank-jump errors are recoverable by resampling; the rest signal
/// bad inputs or genuinely singular configurations.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable sets differ: `{0}` vs `{1}`")]
    VariableMismatch(String, String),

    #[error("chart mismatch: `{0}` vs `{1}`")]
    ChartMismatch(String, String),

    #[error("pole at point ({0}); shift the base point and retry")]
    Pole(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("division by zero {0}")]
    DivisionByZero(&'static str),

    #[error("frame is not pointwise independent at the base point (rank {rank} < {size})")]
    DependentFrame { rank: usize, size: usize },

    #[error("basis vectors are linearly dependent")]
    DependentBasis,

    #[error("rank jump detected at ({witness}): {detail}")]
    RankJump { witness: String, detail: String },

    #[error("derived flag did not stabilize within {0} steps")]
    NotStabilized(usize),

    #[error("bracket value escaped the derived flag at the base point; the point is not regular")]
    NotRegular,

    #[error("covector does not annihilate the distribution at the base point")]
    NotAnnihilating,

    #[error("cubic form is degenerate; kernel witness ({0})")]
    DegenerateCubic(String),

    #[error("graded Lie algebra check failed: {0}")]
    AlgebraCheck(String),

    #[error("nilpotency step {0} exceeds 3")]
    StepTooHigh(usize),

    #[error("annihilator of the derived distribution has rank {0}, expected 2; growth vector inconsistent")]
    AnnihilatorRank(usize),

    #[error("growth vector {0:?} is not of the expected shape {1}")]
    GrowthShape(Vec<usize>, String),

    #[error("immersion rank drops at parameter point ({0})")]
    ImmersionDrop(String),

    #[error("not Lagrangian: omega({0}, {1}) != 0")]
    NotLagrangian(usize, usize),

    #[error("internal construction check failed: {0}")]
    ConstructionBug(String),

    #[error("too many pole retries while sampling ({0} attempts)")]
    TooManyRetries(usize),

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, col: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            col,
            msg: msg.into(),
        }
    }
}
