use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("requested precision of {requested} digits exceeds the supported {supported}")]
    PrecisionExceeded { requested: u32, supported: u32 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("the signed series with j = 1 is only conditionally convergent; no tail bound")]
    DivergentTail,

    #[error("series tail bound {bound:e} exceeds tolerance {tolerance:e} at t = {t}")]
    UnreliableTail { t: f64, bound: f64, tolerance: f64 },

    #[error("enumeration of {required} items exceeds the budget of {budget}")]
    ComplexityGuard { required: u128, budget: u128 },

    #[error("set partitions of {size} elements exceed the size guard of {max}")]
    SizeGuard { size: usize, max: usize },

    #[error("death rates at positions {first} and {second} coincide")]
    DuplicateRates { first: usize, second: usize },

    #[error("matrix norm {norm} is too large for scaling and squaring")]
    ScaleGuard { norm: f64 },

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
