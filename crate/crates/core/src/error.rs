use thiserror::Error;

use crate::families::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{n} is too large")]
    FieldTooLarge { p: u64, n: u32 },
    #[error("no monic irreducible polynomial of degree {n} over F_{p}")]
    NoIrreducible { p: u64, n: u32 },
    #[error("invalid modulus over F_{p}: {reason}")]
    InvalidModulus { p: u64, reason: String },
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("F_{q} is not supported: q must be odd and q = 1 (mod 3)")]
    UnsupportedField { q: u64 },
    #[error("{0} is not a generator of the multiplicative group")]
    NotGenerator(String),
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("operation requires a nonzero element")]
    ZeroElement,
    #[error("map is not a permutation")]
    NotPermutation,
    #[error("map covers {got} points but the field has {expected}")]
    MapSizeMismatch { expected: usize, got: usize },
    #[error("{family} is not a {expected} family")]
    WrongFamilyKind {
        family: Family,
        expected: &'static str,
    },
    #[error("{family} at k={k} produced the zero polynomial")]
    EmptyPolynomial { family: Family, k: u64 },
    #[error("pairing claims of {family} at k={k} conflict at element index {index}")]
    InconsistentClaims { family: Family, k: u64, index: usize },
}
