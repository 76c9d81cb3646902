use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Unknown series letter or a rank that does not give a simple type.
    UnsupportedAlgebra(String),
    /// The rank is valid but above the configured cap.
    RankAboveCap { rank: usize, cap: usize },
    /// Level zero where a positive level is required.
    InvalidLevel(u32),
    /// A coordinate vector that is not a root of the algebra.
    NotARoot(String),
    /// A root that was required to be positive.
    NotPositiveRoot(String),
    /// A simple-reflection index outside `1..=rank`.
    BadReflection(usize),
    /// A generator or ideal generator that is not homogeneous.
    NonHomogeneous(String),
    /// The ideal generator does not lie in the ambient space.
    GeneratorOutsideAmbient,
    /// An ideal bucket that is not contained in the ambient bucket.
    ContainmentViolation { weight: u32 },
    /// A per-bucket dimension cap or an external interrupt fired.
    ResourceCap(String),
    /// Text that does not parse as a monomial or vector.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::UnsupportedAlgebra(t) => write!(f, "unsupported algebra: {t}"),
            Error::RankAboveCap { rank, cap } => {
                write!(f, "unsupported algebra: rank {rank} exceeds the rank cap {cap}")
            }
            Error::InvalidLevel(k) => write!(f, "level must be positive, got {k}"),
            Error::NotARoot(r) => write!(f, "{r} is not a root"),
            Error::NotPositiveRoot(r) => write!(f, "{r} is not a positive root"),
            Error::BadReflection(i) => write!(f, "simple reflection index {i} out of range"),
            Error::NonHomogeneous(what) => write!(f, "non-homogeneous vector: {what}"),
            Error::GeneratorOutsideAmbient => write!(f, "ideal generator lies outside the ambient space"),
            Error::ContainmentViolation { weight } => {
                write!(f, "ideal is not contained in the ambient space at weight {weight}")
            }
            Error::ResourceCap(what) => write!(f, "resource cap exceeded: {what}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
