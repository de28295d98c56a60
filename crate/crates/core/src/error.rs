use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix has a negative eigenvalue {0:e}")]
    NegativeEigenvalue(f64),
    #[error("polynomial of degree {0} is not supported (maximum is 4)")]
    DegreeUnsupported(usize),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("invalid isolating interval: {0}")]
    InvalidInterval(String),
    #[error("point is not on the ellipsoid")]
    NotOnEllipsoid,
    #[error("enumeration bound {bound} exceeds the coordinate cap {cap}")]
    BoxCapExceeded { bound: String, cap: i64 },
    #[error("value is not in the spectrum")]
    NotInSpectrum,
    #[error("inconsistent constraints: no hyper-ellipsoid passes through all points")]
    InconsistentSlice,
    #[error("vector set has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("convex hull contains no positive definite matrix")]
    HullNotPositiveDefinite,
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
    #[error("slice has dimension {0}, expected 1")]
    SliceDimension(usize),
    #[error("no positive definite point on the line")]
    NoPositiveDefinitePoint,
    #[error("degenerate direction: {0}")]
    Degenerate(String),
    #[error("target matrix is not in the convex hull")]
    NotInHull,
    #[error("linear program infeasible: {0}")]
    Infeasible(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("certificate not verified: {0}")]
    Unverified(String),
    #[error("geometry mismatch between operators")]
    GeometryMismatch,
    #[error("unknown catalog id `{0}`")]
    UnknownCatalogId(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
