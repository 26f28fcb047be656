use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("value overflows f64 (log-modulus {log_modulus:.1})")]
    Overflow { log_modulus: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("evaluation point is on a pole (|g| = {magnitude:e})")]
    OnPole { magnitude: f64 },

    #[error("no bound state: lambda_R = {lambda_r} does not exceed 4*pi/mu = {threshold}")]
    NoBoundState { lambda_r: f64, threshold: f64 },

    #[error("running coupling hits a Landau pole (flow denominator {denominator})")]
    LandauPole { denominator: f64 },

    #[error("quadrature did not reach tolerance {tolerance:e} (estimated error {estimate:e})")]
    QuadratureNonConvergence { tolerance: f64, estimate: f64 },

    #[error("newton iteration did not converge after {iterations} steps")]
    NoConvergence { iterations: usize },

    #[error("newton iteration left the search disk around the seed")]
    EscapedBasin,

    #[error("root converged into the upper half-plane (Im = {imag:e})")]
    UpperHalfPlane { imag: f64 },

    #[error("argument principle counts {counted} zeros but {found} resonances were located")]
    MissedPole { counted: i64, found: usize },

    #[error("pole {index}: {source}")]
    Pole {
        index: i64,
        #[source]
        source: Box<Error>,
    },

    #[error("winding number did not settle to an integer (got {winding})")]
    WindingNotInteger { winding: f64 },

    #[error("overlap integration window would exceed {limit} (pathologically wide mode)")]
    TruncationUnreachable { limit: f64 },

    #[error("time-step refinement changed |A| by {change:e} (> {tolerance:e})")]
    Discretization { change: f64, tolerance: f64 },
}

impl Error {
    pub(crate) fn at_pole(index: i64, source: Error) -> Error {
        Error::Pole {
            index,
            source: Box::new(source),
        }
    }
}
