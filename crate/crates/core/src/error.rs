use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidAlpha(u8),
    /// A sequence or operator was asked for an index outside its domain.
    InvalidIndex {
        what: &'static str,
        index: i64,
    },
    /// An exponent or variable index exceeds the packing limits.
    Overflow {
        what: &'static str,
        value: u64,
    },
    /// A series is not known far enough to produce the requested coefficient.
    Truncation {
        needed: i64,
        valid_to: i64,
    },
    /// A series does not have the shape required by the operation.
    SeriesShape(&'static str),
    /// A translation shift was placed on a variable that must stay fixed.
    ForbiddenShift(u32),
    /// The requested level is beyond what was computed.
    LevelNotComputed {
        requested: usize,
        available: usize,
    },
    /// The requested `s`-degree is beyond the truncation of the data.
    SDegreeNotComputed {
        requested: u32,
        available: u32,
    },
    Parse(String),
    /// An operator was applied outside the range it was assembled for.
    OperatorValidity {
        degree: u32,
        max_degree: u32,
    },
    /// Two independent computations of the same quantity disagree.
    CrossCheck(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAlpha(a) => write!(f, "alpha must be 0 or 1, got {a}"),
            Error::InvalidIndex { what, index } => write!(f, "invalid index {index} for {what}"),
            Error::Overflow { what, value } => write!(f, "{what} {value} exceeds the packing limit"),
            Error::Truncation { needed, valid_to } => write!(
                f,
                "series truncation too low: need z^{needed}, known below z^{valid_to}"
            ),
            Error::SeriesShape(msg) => write!(f, "series has the wrong shape: {msg}"),
            Error::ForbiddenShift(i) => write!(f, "translation of t{i} is not allowed"),
            Error::LevelNotComputed { requested, available } => write!(
                f,
                "level {requested} requested but only levels 0..={available} are available; increase the max level"
            ),
            Error::SDegreeNotComputed { requested, available } => write!(
                f,
                "s-degree {requested} requested but data is truncated at s-degree {available}"
            ),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::OperatorValidity { degree, max_degree } => write!(
                f,
                "operator assembled for inputs of degree at most {max_degree}, got degree {degree}"
            ),
            Error::CrossCheck(msg) => write!(f, "cross-check failed: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
