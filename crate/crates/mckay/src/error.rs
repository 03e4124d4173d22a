//! Error type shared across the crate.

use thiserror::Error;

/// Errors produced by partition, abacus, character, and group routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Input could not be read as a partition (non-increasing positive parts).
    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    /// Two partitions were required to have the same size.
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: u64, found: u64 },

    /// A bead sequence had nonzero charge and does not describe a partition.
    #[error("sequence has charge {charge}, expected 0")]
    UnbalancedSequence { charge: i64 },

    /// The modulus is not an odd prime.
    #[error("{0} is not an odd prime")]
    InvalidPrime(u64),

    /// The prime must not exceed the degree of the group.
    #[error("prime {p} exceeds n = {n}")]
    PrimeExceedsN { p: u64, n: u64 },

    /// The partition (or label) is not self-conjugate.
    #[error("not self-conjugate: {0}")]
    NotSymmetric(String),

    /// The partition is not a p-core.
    #[error("({partition}) is not a {p}-core")]
    NotACore { partition: String, p: u64 },

    /// A quotient tuple had the wrong number of components.
    #[error("quotient must have {expected} components, found {found}")]
    QuotientLength { expected: u64, found: usize },

    /// The character degree is divisible by p.
    #[error("degree of ({0}) is divisible by p")]
    NotPPrimeDegree(String),

    /// The partition fails the regularity conditions (empty core, empty
    /// middle tower entries, digit-sized level weights).
    #[error("({0}) is not regular")]
    NotRegular(String),

    /// An operation on towers required an empty bottom entry.
    #[error("core of ({0}) is nonempty")]
    NonEmptyCore(String),

    /// Jacobi symbols are defined for odd lower arguments only.
    #[error("modulus {0} is even")]
    EvenModulus(u64),

    /// Square roots are embedded for odd positive radicands only.
    #[error("radicand {0} must be odd and positive")]
    InvalidRadicand(u64),

    /// An exponent map on roots of unity must be a unit mod the conductor.
    #[error("{t} is not a unit modulo {modulus}")]
    NotAUnit { t: u64, modulus: u64 },

    /// A Galois automorphism description could not be parsed or is invalid.
    #[error("invalid automorphism: {0}")]
    InvalidAut(String),

    /// Group enumeration exceeded the supported order cap.
    #[error("group order exceeds cap ({order} > {cap})")]
    GroupTooLarge { order: usize, cap: usize },

    /// The requested construction is outside the supported range.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Induction requires the subgroup's elements to lie in the parent group.
    #[error("subgroup mismatch: {0}")]
    SubgroupMismatch(String),

    /// Command-line input could not be parsed.
    #[error("parse error: {0}")]
    Parse(String),

    /// A scan ran out of its time budget; output up to this point has
    /// already been written.
    #[error("time budget of {limit_ms} ms exceeded at {at}")]
    BudgetExceeded { limit_ms: u64, at: String },

    /// An internal invariant was violated.
    #[error("internal error: {0}")]
    Internal(String),

    /// Output could not be written.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// A report could not be serialized.
    #[error("serialization error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
