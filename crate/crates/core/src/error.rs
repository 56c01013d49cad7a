use thiserror::Error;

use crate::polyring::PermutationCertificate;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{value} has no inverse modulo {modulus} (gcd = {gcd})")]
    NoInverse { value: u64, modulus: u64, gcd: u64 },

    #[error("congruence {a}*u = {b} (mod {modulus}) has no solution: gcd {d} does not divide {b}")]
    NoSolution {
        a: u64,
        b: u64,
        modulus: u64,
        d: u64,
    },

    #[error("{modulus} is an odd prime; no quadratic permutation polynomial exists with f2 != 0")]
    NoQuadraticPp { modulus: u64 },

    #[error("polynomial is not a permutation of Z_{modulus}")]
    NotPermutation {
        modulus: u64,
        certificate: Box<PermutationCertificate>,
    },

    #[error("precondition violated: T({point}) = {value} != 0 (mod {modulus})")]
    NonVanishingPoint {
        point: u64,
        value: u64,
        modulus: u64,
    },

    #[error("resource limit: {what} needs {required}, budget is {budget}")]
    ResourceLimit {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("computed inverse failed verification for N={modulus}, f1={f1}, f2={f2}")]
    VerificationFailed { modulus: u64, f1: u64, f2: u64 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
