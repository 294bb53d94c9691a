use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("coordinate change matrix is singular")]
    SingularTransform,

    #[error("inconsistent degree shape: {0}")]
    DegreeShape(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("inhomogeneous polynomial: term `{monomial}` has degree {found}, expected {expected}")]
    Inhomogeneous {
        monomial: String,
        found: usize,
        expected: usize,
    },

    #[error("invalid point data: {0}")]
    InvalidPoint(String),

    #[error("configuration has length {actual}, degree {degree} requires (d-1)(d-2)/2 = {expected}")]
    LengthMismatch {
        degree: usize,
        expected: usize,
        actual: usize,
    },

    #[error("degree must be at least 4, got {0}")]
    DegreeTooSmall(usize),

    #[error("point index {index} out of range (configuration has {count} points)")]
    BadIndex { index: usize, count: usize },

    #[error("configuration is not generic: the degree-{degree} form `{certificate}` vanishes on it")]
    NotGeneric { degree: usize, certificate: String },

    #[error("{what}: expected dimension {expected}, found {actual}")]
    UnexpectedDimension {
        what: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("point {point} must be a simple point at (1:0:0); normalize the configuration first")]
    NotNormalized { point: usize },

    #[error("ambient dimensions differ: {0} vs {1}")]
    AmbientMismatch(usize, usize),

    #[error("determinant of the sheaf matrix vanishes identically")]
    DegenerateDeterminant,

    #[error("curve is not in the fibre over this configuration")]
    NotInFibre,

    #[error("locus at point {point} has codimension {codim}, expected 2")]
    CodimViolation { point: usize, codim: usize },

    #[error("locus at point {point} is empty")]
    EmptyLocus { point: usize },

    #[error("normal spaces at point {point} differ: {fibre} in the fibre vs {ambient} among all curves")]
    NormalSpaceMismatch { point: usize, fibre: usize, ambient: usize },

    #[error("invalid germ: {0}")]
    InvalidGerm(String),

    #[error("fat point is not contained in the curve")]
    NotMember,

    #[error("truncation order {given} is below the required minimum {required}")]
    TruncationTooLow { given: usize, required: usize },

    #[error("jet verdict changed between truncation orders {0} and {1}")]
    UnstableTruncation(usize, usize),

    #[error("sampler gave up after {0} rejections")]
    SamplerExhausted(usize),

    #[error("invalid configuration file: {0}")]
    Format(String),
}
