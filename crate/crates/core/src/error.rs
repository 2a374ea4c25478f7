use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("triangle rule violated for ({j}, {k}, {l})")]
    Triangle { j: u32, k: u32, l: u32 },

    #[error("coefficient query out of domain: need 0 <= 2n <= j <= k, got (j, k, n) = ({j}, {k}, {n})")]
    QueryDomain { j: u32, k: u32, n: u32 },

    #[error("projection m = {m} out of range for l = {l}")]
    Projection { l: u32, m: i32 },

    #[error("double factorial undefined for {0} < -1")]
    DoubleFactorial(i64),

    #[error("square root of negative rational {0}")]
    NegativeRadicand(String),

    #[error("recursion stalled at {stage} solving ({a}, {b}, {c}): {reason}")]
    RecursionStalled {
        stage: &'static str,
        a: i64,
        b: i64,
        c: i64,
        reason: String,
    },

    #[error("coefficient table normalizer vanished for (j, k, n) = ({j}, {k}, {n})")]
    ZeroNormalizer { j: u32, k: u32, n: u32 },

    #[error("table kind/query mismatch: {0}")]
    TableMismatch(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("unknown format `{0}`")]
    UnknownFormat(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("corrupt cache entry `{key}`: {reason}")]
    CorruptCache { key: String, reason: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("angular momentum {0} exceeds the supported maximum {max}", max = crate::MAX_L)]
    TooLarge(u32),
}

pub type Result<T> = std::result::Result<T, Error>;
