use thiserror::Error;

use crate::scalar::FieldSpec;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("partition parts must be positive and nonincreasing")]
    InvalidPartition,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("matrix must be square")]
    NotSquare,

    #[error("entry layout does not form a nonempty rectangular matrix")]
    BadShape,

    #[error("cannot parse {0:?} as a field element")]
    ParseScalar(String),

    #[error("jordan data needs at least one eigenvalue block")]
    EmptyJordanData,

    #[error("jordan data blocks sum to {actual}, expected {declared}")]
    SizeMismatch { declared: usize, actual: usize },

    #[error("characteristic polynomial does not split over {0}")]
    NonSplit(FieldSpec),

    #[error("field {field} too small: need {needed} distinct elements")]
    FieldTooSmall { field: FieldSpec, needed: usize },

    #[error("subspace dimension {e} out of range 0..={total}")]
    InfeasibleDimension { e: usize, total: usize },

    #[error("{fiber} fiber mismatch at assignment {assignment}: expected {expected}, observed {observed}")]
    TypeMismatch {
        fiber: String,
        assignment: String,
        expected: String,
        observed: String,
    },

    #[error("operation requires a prime field, got {0}")]
    PrimeFieldRequired(FieldSpec),

    #[error("enumeration of {points} subspaces exceeds the guardrail {limit} (raise --max-enum to override)")]
    GuardrailExceeded { points: String, limit: u64 },

    #[error("modulus {p} exceeds the counting core's limit 2^26")]
    ModulusTooLarge { p: u64 },

    #[error("need at least {need} admissible primes, have {have}")]
    TooFewPrimes { have: usize, need: usize },

    #[error("count sequence is not polynomial: q={q} gives {observed}, interpolant predicts {predicted}")]
    NotPolynomial {
        q: u64,
        observed: u64,
        predicted: String,
    },

    #[error("counterexample found: {instance}")]
    Counterexample { instance: String },

    #[error("check {claim} failed: {detail}")]
    CheckFailed { claim: String, detail: String },
}
