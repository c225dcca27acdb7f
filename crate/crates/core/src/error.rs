use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inner lattice is not contained in the outer lattice")]
    NotASublattice,
    #[error("lattice is not of full rank")]
    NotFullRank,
    #[error("point is not in the cone")]
    NotInCone,
    #[error("cone is not full-dimensional")]
    NotFullDimensional,
    #[error("cone is not pointed")]
    NotPointed,
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("fan is not complete")]
    NotComplete,
    #[error("wrong dimension: expected rank {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("origin is not in the interior of the convex hull")]
    OriginNotInterior,
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("fan has no full-dimensional maximal cone")]
    NoFullDimensionalCone,
    #[error("multivalued function is inconsistent on {0} shared faces")]
    Inconsistent(usize),
    #[error("symmetric function degree {i} out of range 1..={degree}")]
    DegreeOutOfRange { i: usize, degree: usize },
    #[error("degree is not in the working lattice")]
    DegreeNotInLattice,
    #[error("degree is not in the dual cone")]
    DegreeNotInCone,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("cone is not a wall: {0}")]
    NotAWall(String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
    #[error("functional is not in the relative interior of the dual cone")]
    LNotInRelativeInterior,
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable tag used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotASublattice => "NotASublattice",
            Error::NotFullRank => "NotFullRank",
            Error::NotInCone => "NotInCone",
            Error::NotFullDimensional => "NotFullDimensional",
            Error::NotPointed => "NotPointed",
            Error::InvalidFan(_) => "InvalidFan",
            Error::NotComplete => "NotComplete",
            Error::WrongDimension { .. } => "WrongDimension",
            Error::OriginNotInterior => "OriginNotInterior",
            Error::HypothesisFailed(_) => "HypothesisFailed",
            Error::NoFullDimensionalCone => "NoFullDimensionalCone",
            Error::Inconsistent(_) => "Inconsistent",
            Error::DegreeOutOfRange { .. } => "DegreeOutOfRange",
            Error::DegreeNotInLattice => "DegreeNotInLattice",
            Error::DegreeNotInCone => "DegreeNotInCone",
            Error::EmptyPolyhedron => "EmptyPolyhedron",
            Error::NotAWall(_) => "NotAWall",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::LNotInRelativeInterior => "LNotInRelativeInterior",
            Error::CertificateInvalid(_) => "CertificateInvalid",
            Error::Parse(_) => "Parse",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
