use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical or mathematical precondition was violated.
    #[error("{invariant}: {detail}")]
    Domain {
        invariant: &'static str,
        detail: String,
    },

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {error_estimate:e}, requested {requested:e})")]
    Quadrature {
        subdivisions: usize,
        error_estimate: f64,
        requested: f64,
    },

    #[error("series did not converge: {0}")]
    Series(String),

    #[error("pole at {pole} collides with the spectral cutoff {cutoff}")]
    PoleNearCutoff { pole: f64, cutoff: f64 },

    #[error("argument too close to a cotangent pole (beta * omega_d / 2pi = {ratio})")]
    CotangentPole { ratio: f64 },

    #[error("degenerate steady state: {0}")]
    Degenerate(String),

    #[error("Lamb-shift data required when the Lamb shift is included")]
    MissingLambData,

    #[error("route mismatch at {what}: {lhs:e} vs {rhs:e}")]
    RouteMismatch { what: String, lhs: f64, rhs: f64 },

    #[error("grid point {index} (delta_t = {delta_t}): {source}")]
    Point {
        index: usize,
        delta_t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(invariant: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            invariant,
            detail: detail.into(),
        }
    }

    /// Stable, machine-parseable reason code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Domain { .. } => "DOMAIN",
            Error::Quadrature { .. } => "QUADRATURE",
            Error::Series(_) => "SERIES",
            Error::PoleNearCutoff { .. } => "POLE_NEAR_CUTOFF",
            Error::CotangentPole { .. } => "COT_POLE",
            Error::Degenerate(_) => "DEGENERATE",
            Error::MissingLambData => "MISSING_LAMB",
            Error::RouteMismatch { .. } => "ROUTE_MISMATCH",
            Error::Point { source, .. } => source.code(),
            Error::Config(_) => "CONFIG",
            Error::Io(_) => "IO",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
