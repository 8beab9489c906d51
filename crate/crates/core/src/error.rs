use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("p and q must be coprime (gcd({p}, {q}) = {gcd})")]
    NotCoprime { p: i64, q: i64, gcd: i64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("angle {0} is outside the open interval (0, 1)")]
    OutOfRange(String),

    #[error("cannot parse rational '{0}': expected exact form n/d")]
    Parse(String),

    /// An eigenvalue of the Hermitian form is too close to zero to trust its sign.
    #[error("Hermitian form is near-singular at t = {t}: |lambda| = {magnitude:e} below threshold {threshold:e}")]
    NearSingular {
        t: String,
        magnitude: f64,
        threshold: f64,
    },

    #[error("Seifert matrix validation failed: {0}")]
    ValidationFailure(String),

    /// An internal invariant was violated. Indicates a bug, not bad input.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
