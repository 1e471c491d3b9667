use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("representations live on different quivers or dimension vectors")]
    Mismatch,

    #[error("subspace is not stable under arrow `{arrow}`")]
    NotStable { arrow: String },

    #[error("prime {p} divides the denominator {denominator}")]
    BadPrime { p: u64, denominator: String },

    #[error("sampling failed for {what} (seed {seed}); try a larger coefficient bound")]
    SamplingFailed { what: String, seed: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("labels {first} and {second} share a fingerprint but peel differently")]
    DedupInconclusive { first: String, second: String },

    #[error("no consensus for {what}: values {values:?} at seeds {seeds:?}")]
    NoConsensus { what: String, values: Vec<String>, seeds: Vec<u64> },

    #[error("point counts are not polynomial in q: {0}")]
    NonPolynomialCount(String),

    #[error("degree mismatch: expression has degree {expected}, representation has {found}")]
    DegreeMismatch { expected: String, found: String },

    #[error("not enough good primes: need {needed}, pool leaves {available}")]
    PrimePoolExhausted { needed: usize, available: usize },

    #[error("{0}")]
    Usage(String),

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
