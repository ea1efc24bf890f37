use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid point ({h}, {k}): h must be positive")]
    InvalidPoint { h: i64, k: i64 },

    #[error("invalid weight {0}: must be even and at least 2")]
    InvalidWeight(i64),

    #[error("invalid family index n={n} for weight w={w}: need 0 < n < w")]
    InvalidIndex { w: i64, n: i64 },

    #[error("Bernoulli function of order {0} is not supported (need order >= 2)")]
    BernoulliOrder(u32),

    #[error("Apostol sum order {0} must be odd and at least 3")]
    ApostolOrder(u32),

    #[error("unsupported cusp weight {0}: expected one of 10, 14, 16, 18, 20, 24")]
    UnsupportedCuspWeight(u32),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("Hecke index must be positive")]
    ZeroHeckeIndex,

    #[error("no nonzero value found for h <= {0}")]
    Exhausted(u32),

    #[error("malformed symbol spec {0:?}: expected G:w, F:w, E:w:n or Eis:w")]
    MalformedSymbolSpec(String),

    #[error("truncation order must be positive")]
    EmptySeries,

    #[error("invalid sample bounds: {0}")]
    InvalidSample(String),

    /// A correctness tripwire fired: two routes that must agree did not.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
