use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank r = {r} is not a scroll: projective bundle needs r >= 2")]
    NotAScroll { r: i64 },

    #[error("base dimension must be positive, got m = {m}")]
    BaseDimension { m: i64 },

    #[error("dimension {0} exceeds the supported maximum of 255")]
    DimensionTooLarge(u32),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("operands belong to different rings")]
    MixedRings,

    #[error("expected a homogeneous class of degree {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: String },

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: u32, found: u32 },

    #[error("coefficient index (s1, s2) = ({s1}, {s2}) outside s1 + s2 <= m = {m}")]
    CoefficientIndex { s1: u32, s2: u32, m: u32 },

    #[error("no closed special case for r = {r} < m = {m}; use cn_closed")]
    NoSpecialCase { m: u32, r: u32 },

    #[error("hyperquadric fibration data violates {0}")]
    HqfInvariant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
