use alloc::string::String;
use alloc::vec::Vec;

/// Errors raised by the exact algorithms.
///
/// Mathematical inconsistencies in user data (a wrong basket, a non-integral
/// curve coefficient) are reported here rather than by panicking: finding
/// them is the main use of the tool.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("weight {weight} is divisible by modulus {modulus}")]
    WeightDivisibleByModulus { modulus: u32, weight: u32 },

    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u32),

    #[error("empty weight list")]
    EmptyWeights,

    #[error("canonical weight {k} not compatible with type 1/{order}{weights:?}")]
    IncompatibleCanonicalWeight {
        order: u32,
        weights: Vec<u32>,
        k: i64,
    },

    #[error("type 1/{order}{weights:?} has an orbifold locus of dimension at least 2")]
    HigherDimensionalLocus { order: u32, weights: Vec<u32> },

    #[error("curve type 1/{order}{weights:?} needs transverse weights coprime to the order")]
    CurveWeightNotCoprime { order: u32, weights: Vec<u32> },

    #[error("weight {weight} is not coprime to modulus {modulus}")]
    NotCoprime { modulus: u32, weight: u32 },

    #[error("polynomial has terms of negative degree; shift it first")]
    NegativeDegree,

    #[error("zero polynomial passed where a nonzero one is required")]
    ZeroPolynomial,

    #[error("polynomial is not invertible modulo the given modulus")]
    NotInvertible,

    #[error("linear system for the Dedekind correction term is {0}")]
    LinearSystem(&'static str),

    #[error("dimension {0} is not supported (Todd classes are implemented up to dimension 4)")]
    DimensionUnsupported(i64),

    #[error("expected {expected} plurigenera, got {got}")]
    WrongPlurigeneraLength { expected: usize, got: usize },

    #[error("direction {index} of 1/{order}{weights:?} has gcd 1: no curve through this point in that direction")]
    NoCurveDirection {
        order: u32,
        weights: Vec<u32>,
        index: usize,
    },

    #[error("index {index} out of range for {len} weights")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("non-integral coefficient in {what}: {value}")]
    NonIntegralCoefficient { what: String, value: String },

    #[error("missing normal bundle data for curve {0}")]
    MissingNormalData(String),

    #[error("inconsistent basket: chi(O({d})) = {value} is not an integer")]
    NonIntegerChi { d: i64, value: String },

    #[error("residual is not expressible as second curve parts: {0}")]
    ResidualNotExpressible(String),

    #[error("invalid descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("a complete-intersection descriptor is required for {0}")]
    NotCompleteIntersection(&'static str),

    #[error("parse error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("precision must be at least 30 digits, got {0}")]
    PrecisionTooLow(u32),
}

impl Error {
    /// True for errors that mean the data is mathematically inconsistent,
    /// as opposed to malformed input.
    pub fn is_inconsistency(&self) -> bool {
        matches!(
            self,
            Self::NonIntegralCoefficient { .. }
                | Self::NonIntegerChi { .. }
                | Self::ResidualNotExpressible(_)
                | Self::LinearSystem(_)
                | Self::NotInvertible
        )
    }
}

pub type Result<T> = core::result::Result<T, Error>;
