use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("non-exact division: ({dividend}) / ({divisor}) leaves remainder {remainder}")]
    NonExactDivision {
        dividend: String,
        divisor: String,
        remainder: String,
    },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial {poly} has a non-integral coefficient at q^{exponent}")]
    NonIntegralPolynomial { poly: String, exponent: u32 },
    #[error("degree {degree} exceeds the supported maximum {max}")]
    DegreeGuard { degree: u32, max: u32 },
    #[error("{what}: assembled {computed} but closed form gives {expected}")]
    StratumSumMismatch {
        what: String,
        computed: String,
        expected: String,
    },
    #[error("Euler characteristic mismatch for r={r}: computed {computed}, expected {expected}")]
    EulerMismatch {
        r: u32,
        computed: String,
        expected: String,
    },
    #[error("rank {n} exceeds the guard {max}")]
    RankGuard { n: u32, max: u32 },
    #[error("r={r} is outside the supported range {min}..={max}")]
    RankParam { r: u32, min: u32, max: u32 },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("GF({sub}) is not a subfield of GF({sup})")]
    NotASubfield { sub: String, sup: String },
    #[error("characteristic polynomial does not split over GF({0})")]
    ExtensionTooSmall(u64),
    #[error("unsupported field GF({q}): {reason}")]
    UnsupportedField { q: u64, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
}
