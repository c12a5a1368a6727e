use thiserror::Error;

/// Errors produced by the kernel. Every operation is exact, so an error
/// always means a contract violation or a resource cap, never a numerical
/// failure.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("element is not invertible: {0}")]
    NotInvertible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("vector is not in the span")]
    NotInSpan,
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("relation contains a monomial of word length {0}, expected 2")]
    NonQuadraticRelation(usize),
    #[error("relation mixes monomials of different word lengths")]
    InhomogeneousRelation,
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown map `{0}`")]
    UnknownMap(String),
    #[error("map image is not a linear combination of generators")]
    NonLinearImage,
    #[error("word budget exceeded: degree-{degree} word space has {size} words, cap is {cap}")]
    BudgetExceeded { degree: usize, size: u128, cap: u128 },
    #[error("degree {0} exceeds the truncation bound {1}")]
    DegreeOverflow(usize, usize),
    #[error("map is not a verified automorphism")]
    NotAnAutomorphism,
    #[error("generator name `{0}` is already in use")]
    NameCollision(String),
    #[error("relation {0} is not preserved by the map")]
    RelationNotPreserved(usize),
    #[error("relation space dimensions differ: {0} vs {1}")]
    RelationDimMismatch(usize, usize),
    #[error("algebra is not finite-dimensional within degree {0}")]
    NotFiniteDimensional(usize),
    #[error("not a Frobenius algebra: {0}")]
    NotFrobenius(String),
    #[error("truncation window too shallow: {0}")]
    TruncationTooShallow(String),
    #[error("socle degree is {found}, expected {expected}")]
    SocleDegreeMismatch { expected: usize, found: usize },
    #[error("map verification failed: {0}")]
    VerificationFailed(String),
    #[error("skew parameters must all be nonzero")]
    ZeroParameter,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
