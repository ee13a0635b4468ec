use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported family: {0}")]
    UnsupportedFamily(String),
    #[error("malformed datum file at line {line}: {msg}")]
    MalformedDatumFile { line: usize, msg: String },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("root is isotropic; pairing undefined")]
    IsotropicRoot,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("the even simple roots form a single component")]
    NoSecondComponent,
    #[error("group exceeds cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("coefficient rings or variable sets differ")]
    RingMismatch,
    #[error("constant term is not 1")]
    ConstantTermNotOne,
    #[error("negative exponent after collapse")]
    NegativeExponentAfterCollapse,
    #[error("weight is not dominant integral")]
    NotDominant,
    #[error("weight is not typical")]
    NotTypical,
    #[error("exponent is not a non-negative integer: {0}")]
    NonIntegralExponent(String),
    #[error("graph has {size} vertices, cap is {cap}")]
    GraphTooLarge { size: usize, cap: usize },
    #[error("block is not totally disconnected")]
    NotTotallyDisconnected,
    #[error("blocks overlap")]
    OverlappingParts,
    #[error("indices (p,q)=({p},{q}) are not interior")]
    IndexNotInterior { p: usize, q: usize },
    #[error("weight is not singly atypical ({count} vanishing pairings)")]
    NotSinglyAtypical { count: usize },
    #[error("wrong family: {0}")]
    WrongFamily(String),
    #[error("requested truncation {requested} exceeds available {available}")]
    TruncationTooSmall { requested: u32, available: u32 },
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("weights have different atypicality types")]
    MixedAtypicalityTypes,
    #[error("parse error at byte {offset}: {msg}")]
    ParseError { offset: usize, msg: String },
    #[error("unknown symbol `{symbol}` at byte {offset}")]
    UnknownSymbol { offset: usize, symbol: String },
    #[error("internal: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ParseError { .. }
            | Error::UnknownSymbol { .. }
            | Error::UnsupportedFamily(_)
            | Error::MalformedDatumFile { .. }
            | Error::IndexOutOfRange { .. } => 64,
            Error::Internal(_) => 70,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
