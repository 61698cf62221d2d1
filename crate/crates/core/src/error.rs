use thiserror::Error;

/// Errors raised by the domain operations of this crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate id `{0}`")]
    Duplicate(String),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("stability parameter is not admissible: pairing with the dimension vector is {0}, not 0")]
    Inadmissible(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("representation is not framed")]
    NotFramed,
    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),
    #[error("stability parameter lies on the wall of root {0}")]
    OnWall(String),
    #[error("invalid crystal configuration: {0}")]
    InvalidConfiguration(String),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("degenerate polygon: {0}")]
    DegeneratePolygon(String),
    #[error("triangulations belong to different polygons")]
    PolygonMismatch,
    #[error("invalid web: {0}")]
    InvalidWeb(String),
    #[error("constant term of the partition function is not 1")]
    NonUnitConstant,
    #[error("series is not of Gopakumar-Vafa form: {0}")]
    NotGopakumarVafa(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("unknown geometry `{0}`")]
    UnknownGeometry(String),
    #[error("geometry `{0}` carries no torus action")]
    NoTorusAction(String),
    #[error("expression error: {0}")]
    Expression(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("too large: {0}")]
    TooLarge(String),
}

pub type Result<T> = std::result::Result<T, Error>;
