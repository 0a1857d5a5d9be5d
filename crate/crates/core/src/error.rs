use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parameter t = {0} is not a finite number")]
    NonFiniteParameter(f64),

    #[error("t = {0} is negative; the families are defined for 0 <= t <= π/6")]
    NegativeParameter(f64),

    #[error("t = {0} exceeds π/6 ≈ 0.5236, where the convex bipyramid p(t) ceases to exist")]
    ParameterAboveDomain(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("degenerate mesh: {0}")]
    DegenerateMesh(String),

    #[error(
        "construction inconsistency on {segment}: realized {measured}, prescribed {prescribed}"
    )]
    ConstructionInconsistency {
        segment: String,
        measured: f64,
        prescribed: f64,
    },

    #[error("q(t) does not exist: |A'E'| = {ae} is outside ({lower}, {upper})")]
    Existence { ae: f64, lower: f64, upper: f64 },

    #[error("malformed mesh: {0}")]
    MalformedMesh(String),

    #[error("mesh has no marker {0}")]
    MissingMarker(String),

    #[error("open mesh: edge {edge} is used by {count} face(s)")]
    OpenMesh { edge: String, count: usize },

    #[error("inconsistent face orientation: directed edge {0} appears twice")]
    InconsistentOrientation(String),

    #[error("degenerate face {face}: area {area:e}")]
    DegenerateFace { face: String, area: f64 },

    #[error("refinement error: {0}")]
    Refinement(String),

    #[error("gluing mismatch: {0}")]
    GluingMismatch(String),

    #[error("volume ratio is undefined at t = 0 (vol p(0) = 0)")]
    DivisionDegenerate,

    #[error("t* = {t:e} for ratio target {c} falls below the floor {floor:e}")]
    Underflow { t: f64, c: f64, floor: f64 },

    #[error("invalid ratio target: {0}")]
    InvalidTarget(String),

    #[error("invalid sweep bounds: {0}")]
    Bounds(String),

    #[error("unsupported series order {0}; orders 0 through 3 are available")]
    UnsupportedOrder(usize),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Errors caused by an input value rather than by a failed check.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::NonFiniteParameter(_)
                | Error::NegativeParameter(_)
                | Error::ParameterAboveDomain(_)
                | Error::InvalidTarget(_)
                | Error::Bounds(_)
                | Error::UnsupportedOrder(_)
                | Error::DegenerateMesh(_)
        )
    }
}
