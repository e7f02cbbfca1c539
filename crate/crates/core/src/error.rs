use thiserror::Error;

/// Why a `(d, h)` pair fails to define a Riordan array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrayDefect {
    /// `d(0) = 0`
    ZeroD0,
    /// `h(0) != 0`
    NonZeroH0,
    /// `h'(0) = 0`
    ZeroH1,
}

impl std::fmt::Display for ArrayDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ArrayDefect::ZeroD0 => f.write_str("d(0) = 0"),
            ArrayDefect::NonZeroH0 => f.write_str("h(0) != 0"),
            ArrayDefect::ZeroH1 => f.write_str("h'(0) = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a zero constant term")]
    ZeroConstantTerm,

    #[error("inner series of a composition must have a zero constant term")]
    CompositionConstant,

    #[error("series has no compositional inverse: {0}")]
    NotInvertible(ArrayDefect),

    #[error("square root requires constant term 1")]
    SqrtConstant,

    #[error("cannot divide by t^{k}: coefficient of t^{index} is nonzero")]
    NotDivisible { k: usize, index: usize },

    #[error("precision exhausted: need {needed} reliable coefficients, have {available}")]
    PrecisionExhausted { needed: usize, available: usize },

    #[error("invalid Riordan array: {0}")]
    InvalidArray(ArrayDefect),

    #[error("index ({n}, {k}) is outside the truncation order {order}")]
    IndexOutOfRange { n: usize, k: usize, order: usize },

    #[error("array is not in the Appell subgroup")]
    NotAppell,

    #[error("unknown name `{0}`")]
    UnknownName(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("type error: {0}")]
    Type(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
