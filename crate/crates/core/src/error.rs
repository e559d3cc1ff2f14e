use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by the deltoid toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),

    #[error("parameter t = {0} is not on the unit circle")]
    NotOnUnitCircle(String),

    #[error("tangent parameters do not multiply to 1 (|t1 t2 t3 - 1| = {0:e})")]
    ProductNotOne(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse complex literal {0:?}")]
    ParseComplex(String),

    #[error("loop sample {index} is too close to the deltoid (|residual| = {residual:e})")]
    TooCloseToDeltoid { index: usize, residual: f64 },

    #[error("path lifting is ambiguous near sample {index} after maximum subdivision")]
    AmbiguousLift { index: usize },

    #[error("lift endpoint is {distance:e} away from the nearest tree vertex")]
    EndpointMismatch { distance: f64 },

    #[error("preimages collide at level {level} (separation {separation:e})")]
    VertexCollision { level: usize, separation: f64 },

    #[error("start point is not a preimage of the path basepoint (residual {0:e})")]
    NotAPreimage(f64),

    #[error("identity check failed: {0}")]
    CheckFailed(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
