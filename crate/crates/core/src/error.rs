//! Error type shared by all modules.

use thiserror::Error;

use crate::rootsys::Weight;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Root-system family/rank outside the supported tables.
    #[error("unsupported root system: {0}")]
    UnsupportedType(String),

    /// Operands built over different root systems.
    #[error("mismatched root systems")]
    MismatchedRootSystem,

    /// A multiplicity value is not a nonnegative integer, so the
    /// constant-term inner product is unavailable.
    #[error("multiplicity is not a nonnegative integer; inner product unavailable")]
    NonIntegerMultiplicity,

    /// A weight was required to lie in the I-dominant cone and does not.
    #[error("weight {0} is not I-dominant")]
    NotIDominant(Weight),

    /// Exact Laurent division failed: the identity under test is broken.
    #[error("not divisible: no exact Laurent quotient exists")]
    NotDivisible,

    /// A polynomial that must be W-invariant is not.
    #[error("polynomial is not W-invariant")]
    NotWInvariant,

    /// A vector polynomial (or scalar input) fails the required invariance.
    #[error("input fails the required invariance")]
    NotInvariant,

    /// Two spectral vectors along a lower ideal coincide, so the
    /// eigenfunction recursion cannot proceed at this multiplicity.
    #[error("spectral collision between {0} and {1}")]
    SpectralCollision(Weight, Weight),

    /// A Gram matrix of independent vectors came out singular.
    #[error("singular Gram matrix")]
    SingularGram,

    /// Two routes that must agree by construction disagreed.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}
