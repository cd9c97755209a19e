use thiserror::Error;

/// Errors shared across the whole crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element is not invertible modulo {0}")]
    NotInvertible(String),
    #[error("operands belong to different coefficient contexts")]
    ContextMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial degree too small: {0}")]
    DegreeTooSmall(String),
    #[error("polynomial is not irreducible: {0}")]
    NotIrreducible(String),
    #[error("modulus is not prime: {0}")]
    NotPrime(String),
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("{0} does not divide {1}")]
    RDoesNotDivide(String, String),
    #[error("zero element where a unit is required")]
    ZeroElement,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("Lagrange resolvent is zero (input almost surely reducible)")]
    ZeroResolvent,
    #[error("polynomial does not satisfy the Stickelberger factor-count property for r={0}")]
    PropertyNotSatisfied(String),
    #[error("invalid primitive root of unity: {0}")]
    BadZeta(String),
    #[error("element is not an r-th residue")]
    NotAResidue,
    #[error("supplied cofactor does not match q-1 = r^e t with r coprime to t")]
    BadFactorization,
    #[error("order assertion failed: {0}")]
    OrderMismatch(String),
    #[error("fixed subring has dimension {got}, expected {expected}")]
    DimensionMismatch { got: usize, expected: usize },
    #[error("resultant over the cyclotomic ring is a zero divisor")]
    ZeroDivisorEncountered,
    #[error("extended map is not a ring automorphism: {0}")]
    AutomorphismInconsistent(String),
    #[error("field construction failed: {0}")]
    ConstructionFailed(String),
    #[error("deterministic search exceeded the trial cap of {0}")]
    TrialCapExceeded(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
