use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// An enumeration or construction would exceed the configured cap.
    CapExceeded { what: &'static str, size: u64, cap: u64 },
    NotPrime(u64),
    /// Subfield degree does not divide the field degree.
    BadSubfield { degree: usize, subfield: usize },
    NotInvertible,
    /// A Cartan integer or pairing is not integral.
    NonIntegral,
    NotPositiveDefinite,
    /// The valuation data needed exceeds the working precision.
    PrecisionExhausted,
    UnsupportedRank(usize),
    RankMismatch { expected: usize, found: usize },
    /// No Lang preimage within the searched extension degrees.
    NotFound { max_extension: u32 },
    MatchFailure(String),
    NotACocycle,
    NoTrivialization,
    NonInvariantImage,
    ZeroEntry,
    ZeroValue,
    CharacterMismatch,
    BaseMismatch { left: u64, right: u64 },
    /// Malformed input that is not covered by a more specific variant.
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CapExceeded { what, size, cap } => {
                write!(f, "{what} of size {size} exceeds cap {cap}")
            }
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::BadSubfield { degree, subfield } => {
                write!(f, "subfield degree {subfield} does not divide {degree}")
            }
            Error::NotInvertible => f.write_str("matrix is not invertible"),
            Error::NonIntegral => f.write_str("pairing is not an integer"),
            Error::NotPositiveDefinite => f.write_str("symmetrized matrix is not positive definite"),
            Error::PrecisionExhausted => f.write_str("working precision exhausted"),
            Error::UnsupportedRank(n) => write!(f, "rank {n} is not supported"),
            Error::RankMismatch { expected, found } => {
                write!(f, "rank mismatch: expected {expected}, found {found}")
            }
            Error::NotFound { max_extension } => {
                write!(f, "no Lang preimage in extensions of degree <= {max_extension}")
            }
            Error::MatchFailure(msg) => write!(f, "class matching failed: {msg}"),
            Error::NotACocycle => f.write_str("input does not define a cocycle in the subgroup"),
            Error::NoTrivialization => f.write_str("cocycle is not a coboundary in the subgroup"),
            Error::NonInvariantImage => f.write_str("Satake image is not Weyl invariant"),
            Error::ZeroEntry => f.write_str("torus entry is zero"),
            Error::ZeroValue => f.write_str("Satake parameter value is zero"),
            Error::CharacterMismatch => f.write_str("twisting characters differ"),
            Error::BaseMismatch { left, right } => {
                write!(f, "residue sizes differ: {left} vs {right}")
            }
            Error::Invalid(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
