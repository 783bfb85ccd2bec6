use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A parameter fell outside the interval on which the requested function is defined.
    #[error("{what} = {value} is outside the admissible set {admissible}")]
    Domain {
        what: &'static str,
        value: f64,
        admissible: String,
    },

    #[error("unsupported knot family: {0}")]
    UnsupportedFamily(String),

    #[error("slope {slope} is not covered: the certified interval for {knot} is {interval}")]
    SlopeNotCovered {
        slope: String,
        knot: String,
        interval: String,
    },

    #[error(
        "slope 0 is out of scope: 0-surgery is handled by the first Betti number argument, \
         not by a representation certificate"
    )]
    ZeroSlope,

    #[error("no sign change of slope - r found for r = {slope}; nearest achieved slope {nearest}")]
    SearchFailure { slope: String, nearest: f64 },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("singular longitude formula: denominator {0:e}")]
    Singularity(f64),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub(crate) fn ensure_finite(what: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("{what} must be finite, got {v}")))
    }
}
