use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("constant polynomial")]
    ConstantPolynomial,
    #[error("zero element")]
    ZeroElement,
    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeCap { degree: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("point lies on the hyperplane")]
    PointOnHyperplane,
    #[error("basis element set is not a basis of L(D)")]
    SingularChangeOfBasis,
    #[error("point is an indeterminacy point of the divisor map")]
    IndeterminatePoint,
    #[error("no basis function has a pole along the divisor")]
    NoPoles,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is not in B: denominator has a factor not dividing f")]
    NotInB,
    #[error("gate polynomial vanishes at the specialization point")]
    GateViolated,
    #[error("need at least {needed} samples with distinct abscissae, got {got}")]
    InsufficientSamples { needed: usize, got: usize },
    #[error("{0} is not a primitive integer polynomial")]
    NonPrimitive(String),
    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),
    #[error("unsupported degree d = {0}")]
    UnsupportedDegree(usize),
    #[error("unsupported extension: {0}")]
    UnsupportedExtension(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal verification failed: {0}")]
    VerificationFailed(String),
}

impl Error {
    /// True for errors signalling a request outside the supported scope
    /// rather than malformed input.
    pub fn is_unsupported(&self) -> bool {
        matches!(
            self,
            Error::UnsupportedGeometry(_)
                | Error::UnsupportedDegree(_)
                | Error::UnsupportedExtension(_)
                | Error::DegreeCap { .. }
        )
    }
}
