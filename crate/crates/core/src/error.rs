use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("depth {0} is outside the supported range 1..={max}", max = crate::tree::MAX_DEPTH)]
    DepthOutOfRange(u8),

    #[error("depth mismatch: {left} vs {right}")]
    DepthMismatch { left: u8, right: u8 },

    #[error("vector length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("element does not lie in the bottom-level kernel")]
    NotInKernel,

    #[error("not a tree automorphism: {0}")]
    NotTreeAutomorphism(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("generator index {index} out of range for depth {depth}")]
    GeneratorIndex { index: usize, depth: u8 },

    #[error("cannot include depth {from} into depth {to}")]
    Inclusion { from: u8, to: u8 },

    #[error("subgroup closure exceeded the bound of {0} elements")]
    ClosureBound(usize),

    #[error("exhaustive enumeration is limited to depth <= 3 (got {0})")]
    TooDeepForEnumeration(u8),

    #[error("operation requires a nontrivial group")]
    TrivialGroup,

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("malformed record: {0}")]
    Record(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
