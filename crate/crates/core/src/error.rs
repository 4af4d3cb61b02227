use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field cardinality exceeds the supported bound")]
    Overflow,
    #[error("n must be at least 1")]
    ZeroLength,
    #[error("gcd(q,n) must be 1 (q = {q}, n = {n})")]
    NotCoprime { q: u64, n: u64 },
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("formal degree {formal} is below the actual degree {actual}")]
    FormalDegree { formal: usize, actual: usize },
    #[error("polynomial is not self-reciprocal")]
    NotSelfReciprocal,
    #[error("self-reciprocal polynomial of odd degree")]
    OddDegree,
    #[error("polynomial vanishes at {0}")]
    UnitRoot(i64),
    #[error("polynomial does not divide x^n-1")]
    NotADivisor,
    #[error("element is not in the subfield")]
    NotInSubfield,
    #[error("index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("elements belong to different algebras")]
    ContextMismatch,
    #[error("explicit forms need rad(n) | q-1 (q = {q}, n = {n}); use the general computation")]
    RadicalCondition { q: u64, n: u64 },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
