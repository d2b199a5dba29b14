use thiserror::Error;

/// Errors raised anywhere in the enumerator pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid modulus {0}: must be odd")]
    InvalidModulus(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime congruent to +-1 mod 8")]
    NotQrPrime(u64),
    #[error("code is not cyclic")]
    NotCyclic,
    #[error("non-integer coefficient at weight {weight}")]
    NonIntegerResult { weight: usize },
    #[error("negative coefficient at weight {weight}")]
    NegativeCoefficient { weight: usize },
    #[error("inconsistent input: {0}")]
    Inconsistent(String),
    #[error("support forces a negative coefficient at weight {weight}")]
    Underflow { weight: usize },
    #[error("coefficient at weight {weight} is missing")]
    MissingCoefficient { weight: usize },
    #[error("coefficient at weight {weight} is not a single-parameter monomial")]
    NotMonomial { weight: usize },
    #[error("divisibility failure: {0}")]
    DivisibilityFailure(String),
    #[error("parameter interval for {param} is empty")]
    EmptyInterval { param: String },
    #[error("enumeration budget exceeded: needs {needed} codewords, limit {limit}")]
    BudgetExceeded { needed: String, limit: String },
    #[error("no pair of disjoint systematic forms")]
    NoDisjointForms,
    #[error("decoder returned a non-codeword")]
    DecoderViolation,
    #[error("search exhausted after {0} attempts")]
    SearchExhausted(usize),
    #[error("moduli {0} and {1} are not coprime")]
    NotCoprime(String, String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("group of order 1 carries no congruence information")]
    DegenerateGroup,
    #[error("fixed subcode for {label} has dimension {dimension}; supply its counts externally")]
    SubcodeTooLarge { label: String, dimension: usize },
    #[error("empty seed set")]
    EmptySeedSet,
    #[error("sampler produced no codeword of weight {0}")]
    SamplerFailure(usize),
    #[error("{0} is not of the form 2^m - 1")]
    NotPrimitiveLength(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
