use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the library. Every variant is an input or search failure;
/// there is no silent fallback anywhere.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("base change matrix is singular")]
    SingularBaseChange,
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),
    #[error("discriminant must be positive, got {0}")]
    NonPositiveDiscriminant(BigInt),
    #[error("{0} is not a discriminant of an even lattice with H^2 = 4 (need r = 0, 1, 4 mod 8)")]
    BadResidue(BigInt),
    #[error("discriminant {0} admits no smooth quartic (a forbidden class exists)")]
    ForbiddenDiscriminant(BigInt),
    #[error("discriminant {0} is a perfect square; the operation needs a non-square")]
    SquareDiscriminant(BigInt),
    #[error("odd self-intersection {0}")]
    OddSquare(BigInt),
    #[error("class is not a curve class: {0}")]
    NotACurve(String),
    #[error("odd target square {0}; even lattices only carry even squares")]
    OddTarget(BigInt),
    #[error("c = 0 is not allowed here")]
    ZeroC,
    #[error("({0}, {1}) does not satisfy c*a^2 - b*a*b' + 2*b'^2 = c")]
    NotOnConic(BigInt, BigInt),
    #[error("matrix is not an isometry of the lattice")]
    NotAnIsometry,
    #[error("link record ({0}, {1}) is missing from the catalog")]
    UnknownLink(BigInt, BigInt),
    #[error("link word breaks at step {0}: target {1} does not feed source {2}")]
    ChainMismatch(usize, String, String),
    #[error("search exhausted: {0}")]
    SearchExhausted(String),
}

pub type Result<T> = std::result::Result<T, Error>;
