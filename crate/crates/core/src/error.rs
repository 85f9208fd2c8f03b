use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is too small, need a prime N > 3")]
    ModulusTooSmall(u64),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("zero has no multiplicative order")]
    ZeroOrder,
    #[error("element is not a quadratic residue")]
    NotASquare,
    #[error("roots must be distinct")]
    RepeatedRoot,
    #[error("characteristic polynomial has a double root")]
    DegenerateRoots,
    #[error("initial value coincides with a root of the characteristic polynomial")]
    RootHit,
    #[error("no ratio of order {k} exists for N = {modulus}")]
    BadTarget { modulus: u64, k: u64 },
    #[error("exhaustive enumeration for N = {0} exceeds the size guard (N <= {limit})", limit = crate::census::BRUTE_FORCE_LIMIT)]
    TooLarge(u64),
    #[error("cannot compare tables of different modulus or family")]
    FamilyMismatch,
    #[error("period {period} is not achievable for N = {modulus}")]
    Unachievable { modulus: u64, period: u64 },
    #[error("internal verification failed: {0}")]
    Verification(String),
}
