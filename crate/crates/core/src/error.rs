use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("p-adic order of zero is undefined")]
    UndefinedOrder,

    #[error("division by zero polynomial")]
    DivisionByZero,

    #[error("series contract violated by {series}: {reason}")]
    SeriesContract { series: String, reason: String },

    #[error("precision shortfall: requested order {requested}, available {available}")]
    Precision { requested: i64, available: i64 },

    #[error("calibration failed for m = {m}: {reason}")]
    Calibration { m: u32, reason: String },

    #[error("interpolation unstable for n = {n}: guard sample m = {m} does not reproduce")]
    InterpolationInstability { n: i64, m: u32 },

    #[error("structure check failed for A_{n}: {reason}")]
    Structure { n: i64, reason: String },

    #[error("coercion of {value} into characteristic {p} is undefined (negative p-order)")]
    CoercionDomain { value: String, p: u64 },

    #[error("degenerate model for n = {n}, p = {p}: every coefficient vanishes mod p")]
    DegenerateModel { n: i64, p: u64 },

    #[error("field order {order} exceeds budget {budget}")]
    BudgetExceeded { order: u128, budget: u128 },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("cache corrupted: {0}; delete the cache directory and regenerate")]
    CacheCorrupt(String),

    #[error("unknown {kind} strategy '{name}' (available: {available})")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        available: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
}
