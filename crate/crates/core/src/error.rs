//! Error type shared by the whole library.
//!
//! Every fallible operation returns [`Error`]; mathematically negative
//! answers that a caller may want to branch on (membership is false,
//! a square root does not exist over the field, ...) are errors with
//! dedicated variants rather than panics, so the CLI can map them to
//! exit codes.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("polynomial is not homogeneous (mixed total degrees {0} and {1})")]
    NonHomogeneous(usize, usize),
    #[error("coefficient not representable in the field: {0}")]
    BadField(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("not a square in the field")]
    NotASquare,
    #[error("a field extension would be required: {0}")]
    FieldExtensionRequired(String),
    #[error("points are equal")]
    EqualPoints,
    #[error("lines are equal")]
    EqualLines,
    #[error("degenerate frame (three of the four points are collinear)")]
    DegenerateFrame,
    #[error("base points are collinear")]
    CollinearPoints,
    #[error("map is not dominant (identically vanishing Jacobian)")]
    NotDominant,
    #[error("map has degree {0}, expected {1}")]
    WrongDegree(usize, usize),
    #[error("map has infinitely near base points")]
    InfinitelyNearBasePoints,
    #[error("map has base points that are not rational over the field")]
    IrrationalBasePoints,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("point is a singular point of the curve")]
    SingularPoint,
    #[error("point lies on the curve")]
    PointOnCurve,
    #[error("form does not define a rational cubic: {0}")]
    NotRationalCubic(String),
    #[error("curve markers are not rational over the field: {0}")]
    IrrationalData(String),
    #[error("the map contracts the curve")]
    CurveContracted,
    #[error("the map does not send the source curve onto the target curve")]
    NotOnto,
    #[error("the restriction to the curve is not birational")]
    NotBirational,
    #[error("conic is degenerate")]
    DegenerateConic,
    #[error("cubic markers are not rational: {0}")]
    IrrationalMarkers(String),
    #[error("no projective transport found between the curves")]
    NoTransport,
    #[error("linear map does not preserve the conic")]
    NotInAutConic,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("base points do not match the required on/off-curve pattern")]
    WrongBasePointPattern,
    #[error("tangency of the base line is inconsistent with the requested cubic class")]
    WrongTangency,
    #[error("solver target hits an excluded point of the parameter line")]
    ExcludedPoint,
    #[error("deterministic search exhausted after {0} candidates")]
    SearchExhausted(usize),
    #[error("no line-factorization oracle available for this target")]
    OracleUnavailable,
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("root search incomplete: {0}")]
    RootSearchIncomplete(String),
    #[error("operands belong to different fields")]
    MixedFields,
}

impl Error {
    /// CLI exit-code class: 1 input, 2 mathematical failure, 3 resource bound.
    pub fn exit_class(&self) -> i32 {
        match self {
            Error::Syntax { .. } | Error::NonHomogeneous(..) | Error::BadField(_) => 1,
            Error::SearchExhausted(_) | Error::RootSearchIncomplete(_) => 3,
            _ => 2,
        }
    }
}
