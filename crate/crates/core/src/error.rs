use thiserror::Error;

/// Broad classes of failure, used by front ends to pick exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Parse,
    Validation,
    Precision,
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("resultant undefined: both polynomials are zero")]
    BothZero,
    #[error("operation needs a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not monic with integer coefficients")]
    NotMonic,
    #[error("polynomial is reducible: {0}")]
    Reducible(String),
    #[error("irreducibility unverified for degree {0} (no prime below 1000 certifies it)")]
    IrreducibilityUnverified(usize),
    #[error("field is not totally real: {real_roots} real roots for degree {degree}")]
    NotTotallyReal { real_roots: usize, degree: usize },
    #[error("invalid integral basis: {0}")]
    InvalidBasis(String),
    #[error("basis is not closed under multiplication: l{i}*l{j} has non-integral coordinates")]
    BasisNotClosed { i: usize, j: usize },
    #[error("discriminant mismatch: expected {expected}, computed {computed}")]
    DiscriminantMismatch { expected: String, computed: String },
    #[error("d = {0} is not a squarefree positive integer")]
    NotSquarefreeD(i64),
    #[error("discriminants not coprime: gcd(D_L = {d_l}, D_M = {d_m}) = {gcd}")]
    Coprimality { d_l: String, d_m: String, gcd: String },
    #[error("interval precision cap of {cap} bits exceeded while certifying {what}")]
    PrecisionCap { cap: u32, what: &'static str },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Parse(_) => ErrorClass::Parse,
            Error::PrecisionCap { .. } => ErrorClass::Precision,
            Error::Invariant(_) => ErrorClass::Internal,
            _ => ErrorClass::Validation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
