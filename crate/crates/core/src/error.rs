use thiserror::Error;

/// Errors raised anywhere in the engine.
///
/// Mathematical failures and bad inputs share one type so the CLI can map
/// them onto exit codes without inspecting strings.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coefficient of q^{index} requested but the series is only known below q^{precision}")]
    Precision { index: i64, precision: i64 },

    #[error("non-invertible series")]
    NonInvertible,

    #[error("eta quotient has fractional valuation {numerator}/24")]
    FractionalValuation { numerator: i64 },

    #[error("unsupported level {0}")]
    UnsupportedLevel(u64),

    #[error("-{0} is not a discriminant (need D > 0 and D = 0 or 3 mod 4)")]
    BadDiscriminant(i64),

    #[error("-{0} is not a fundamental discriminant; class polynomials are only defined for fundamental -D")]
    NotFundamental(i64),

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("catalog error: {0}")]
    Catalog(String),

    #[error("eigen-decomposition failed: {0}")]
    Eigen(String),

    #[error("normalization inconsistency: {0}")]
    Normalization(String),

    #[error("insensitive fiducial D={disc} at level {level}: 2H_1(D) = H_N(D)")]
    InsensitiveFiducial { level: u64, disc: i64 },

    #[error("family for level {level} only reaches m={have}, need m={need}")]
    FamilyDepth { level: u64, need: u64, have: u64 },

    #[error("cache: {0}")]
    Cache(String),

    #[error("numeric: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
