use std::fmt;

use thiserror::Error;

/// A Construction-1 precondition that did not hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Precondition {
    Independence,
    Divisibility,
    NotWeaklyRegular,
    DualsLackPU,
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Precondition::Independence => "Independence",
            Precondition::Divisibility => "Divisibility",
            Precondition::NotWeaklyRegular => "NotWeaklyRegular",
            Precondition::DualsLackPU => "DualsLackPU",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_p")]
    ReducibleModulus,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("operands belong to different fields or spaces")]
    SpecMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("degree {to} does not divide degree {from}")]
    DegreeNotDividing { from: usize, to: usize },
    #[error("element does not lie in the requested subfield")]
    NotInSubfield,
    #[error("cyclotomic operands use different primes")]
    PrimeMismatch,
    #[error("cyclotomic coordinate overflow")]
    CoordinateOverflow,
    #[error("value is not a rational integer")]
    NotRationalInteger,
    #[error("component index lambda must be nonzero")]
    ZeroLambda,
    #[error("index {index} out of range for a set of size {size}")]
    OutOfRange { index: u64, size: u64 },
    #[error("table has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("spectrum is not the transform of a Z_p-valued function")]
    NotAFunctionSpectrum,
    #[error("U is linearly dependent over F_p")]
    DependentU,
    #[error("component lambda={lambda} is not weakly regular bent")]
    NotWeaklyRegular { lambda: u32 },
    #[error("input of size {size} exceeds the limit {limit}")]
    TooLarge { size: u64, limit: u64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(Precondition),
    #[error("post-construction verification failed: {0}")]
    PostVerificationFailed(String),
    #[error("the H part is not plateaued")]
    HNotPlateaued,
    #[error("matrix is not invertible over F_p")]
    NotInvertible,
    #[error("unsupported degree pair: {0}")]
    BadDegreePair(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid manifest: {0}")]
    InvalidManifest(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
