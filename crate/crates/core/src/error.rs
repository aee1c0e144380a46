use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,
    #[error("polynomial is not irreducible over Q")]
    NotIrreducible,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("prime {0} is not admissible (not prime or divides the leading coefficient)")]
    BadPrime(u64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector entry is zero")]
    ZeroEntry,
    #[error("root-of-rational witness does not match the polynomial")]
    WitnessInvalid,
    #[error("permutation degree must be at least 2")]
    DegreeTooSmall,
    #[error("group is not transitive")]
    NotTransitive,
    #[error("group order {0} exceeds the enumeration cap")]
    GroupTooLarge(u128),
    #[error("Galois group identification failed: {0}")]
    GaloisFail(String),
    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(usize),
    #[error("degree {0} is too large for brute-force permutation filtering")]
    DegreeTooLarge(usize),
    #[error("catalog is corrupt: {0}")]
    CatalogCorrupt(String),
    #[error("input error: {0}")]
    InputError(String),
    #[error("Q-irreducibility check was inconclusive")]
    ModuleCheckInconclusive,
    #[error("numeric precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
}

impl Error {
    /// Process exit code for command-line front ends: 1 for input errors, 2 when
    /// Galois group identification failed, 3 for an inconclusive module check or
    /// exhausted numeric precision.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::GaloisFail(_) => 2,
            Error::ModuleCheckInconclusive | Error::PrecisionExhausted(_) => 3,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(Error::Parse("x".into()).exit_code(), 1);
        assert_eq!(Error::NotIrreducible.exit_code(), 1);
        assert_eq!(Error::GaloisFail("x".into()).exit_code(), 2);
        assert_eq!(Error::ModuleCheckInconclusive.exit_code(), 3);
        assert_eq!(Error::PrecisionExhausted("x".into()).exit_code(), 3);
    }
}
