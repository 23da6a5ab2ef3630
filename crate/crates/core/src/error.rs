use thiserror::Error;

/// Errors raised by the library.
///
/// Every variant maps to a stable machine-readable name through [`Error::kind`],
/// which the command-line front end reports as `error.kind`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("invalid field parameters: {0}")]
    InvalidParams(String),
    #[error("modulus is not irreducible over F_{p}: {coeffs:?}")]
    NotIrreducible { p: u64, coeffs: Vec<u64> },
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("size budget exceeded: {what} needs {needed}, limit is {limit}")]
    SizeBudgetExceeded {
        what: &'static str,
        needed: u128,
        limit: u128,
    },
    #[error("operands belong to different fields")]
    CtxMismatch,
    #[error("element encoding {value} is out of range for a field of order {order}")]
    EncodingOutOfRange { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("stride mismatch: {0} vs {1}")]
    StrideMismatch(u32, u32),
    #[error("stride {stride} is not coprime to n = {n}")]
    StrideNotCoprime { stride: u32, n: u32 },
    #[error("operation requires stride 1, got {0}")]
    StrideNotOne(u32),
    #[error("gcrd of two zero polynomials is undefined")]
    BothZero,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("lower-right block W is singular")]
    SingularW,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("index {index} out of range 0..={max}")]
    OutOfRange { index: usize, max: usize },
    #[error("index set {0:?} is not a run of consecutive residues")]
    NotConsecutive(Vec<usize>),
    #[error("index sets have different sizes: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("subresultant index m = {m} exceeds min(k, l) = {max}")]
    DegreeRange { m: usize, max: usize },
    #[error("polynomial has zero leading coefficient (zero polynomial)")]
    ZeroLeadingCoefficient,
    #[error("parse error at position {position} near `{token}`: {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::InvalidParams(_) => "InvalidParams",
            Error::NotIrreducible { .. } => "NotIrreducible",
            Error::InvalidModulus(_) => "InvalidModulus",
            Error::SizeBudgetExceeded { .. } => "SizeBudgetExceeded",
            Error::CtxMismatch => "CtxMismatch",
            Error::EncodingOutOfRange { .. } => "EncodingOutOfRange",
            Error::DivisionByZero => "DivisionByZero",
            Error::StrideMismatch(..) => "StrideMismatch",
            Error::StrideNotCoprime { .. } => "StrideNotCoprime",
            Error::StrideNotOne(_) => "StrideNotOne",
            Error::BothZero => "BothZero",
            Error::InternalInconsistency(_) => "InternalInconsistency",
            Error::NotSquare { .. } => "NotSquare",
            Error::SingularW => "SingularW",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::OutOfRange { .. } => "OutOfRange",
            Error::NotConsecutive(_) => "NotConsecutive",
            Error::SizeMismatch(..) => "SizeMismatch",
            Error::DegreeRange { .. } => "DegreeRange",
            Error::ZeroLeadingCoefficient => "ZeroLeadingCoefficient",
            Error::Parse { .. } => "ParseError",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
