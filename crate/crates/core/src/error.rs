use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid quality vector: {0}")]
    InvalidQuality(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("negative bid {bid} from agent {agent}")]
    NegativeBid { agent: usize, bid: String },

    #[error("length mismatch for {what}: expected {expected}, got {got}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{mechanism} is not supported here")]
    UnsupportedMechanism { mechanism: &'static str },

    #[error(
        "quadrature did not converge: error estimate {achieved:e} exceeds tolerance {requested:e}"
    )]
    Quadrature { achieved: f64, requested: f64 },

    #[error("bid function denominator vanishes at v = {v}")]
    DenominatorVanishes { v: f64 },

    #[error("bid function diverges at v = {v}")]
    Diverges { v: f64 },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },
}

impl Error {
    /// True for failures of the numerical machinery rather than of the input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Quadrature { .. } | Error::DenominatorVanishes { .. } | Error::Diverges { .. }
        )
    }
}
