use thiserror::Error;

pub type Result<T, E = CoreError> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("position {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("cell ({row},{col}) is not in the diagram of {composition}")]
    CellOutsideDiagram { row: usize, col: usize, composition: String },

    #[error("modulus mismatch: expected {expected}, found {found}")]
    ModulusMismatch { expected: u32, found: u32 },

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("invalid index set: {0}")]
    InvalidIndexSet(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at sample point (q, t) = ({q}, {t})")]
    PoleAtSample { q: String, t: String },

    #[error("pole at s = 1: limit does not exist")]
    PoleAtOne,

    #[error("division by {divisor} did not cancel")]
    NonCancellation { divisor: String },

    #[error("solution space has dimension {found}, expected 1")]
    NullspaceDimension { found: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o: {0}")]
    Io(String),
}

impl From<std::io::Error> for CoreError {
    fn from(e: std::io::Error) -> Self {
        CoreError::Io(e.to_string())
    }
}

impl CoreError {
    /// Errors that a sampled evaluation can hit at an unlucky point and that
    /// disappear after resampling.
    pub fn is_pole(&self) -> bool {
        matches!(
            self,
            CoreError::DivisionByZero | CoreError::PoleAtSample { .. } | CoreError::NullspaceDimension { .. }
        )
    }
}
