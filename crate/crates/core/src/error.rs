//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Text input that does not conform to the grammar. The offset is a byte
    /// position into the input string.
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    /// An identifier that is neither a declared variable, a basis tag nor the
    /// declared parameter.
    #[error("unknown variable `{name}` at byte {offset}")]
    UnknownVariable { offset: usize, name: String },

    /// A basis tag `e<k>` with `k` outside `1..=rank`.
    #[error("component index {index} out of range 1..={rank}")]
    ComponentOutOfRange { index: usize, rank: usize },

    /// Mixed variable counts or ranks between operands.
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    /// A computation requiring a finite-colength input received an infinite one.
    #[error("quotient has infinite colength")]
    InfiniteColength,

    /// A graded computation received a non-homogeneous input.
    #[error("input is not homogeneous: {0}")]
    NonHomogeneous(String),

    /// A punctual computation received a module not supported at the origin.
    #[error("quotient is not supported at the origin")]
    SupportNotOrigin,

    /// The support of the quotient involves irrational coordinates.
    #[error("IRRATIONAL_SUPPORT: {0}")]
    IrrationalSupport(String),

    /// `add_disjoint_point` received a point lying in the support.
    #[error("SUPPORT_COLLISION: intersecting with the point ideal changed the colength by {delta} instead of 1")]
    SupportCollision { delta: i64 },

    /// A deformation candidate violating the socle-support admissibility rule.
    #[error("inadmissible deformation candidate: {0}")]
    InadmissibleCandidate(String),

    /// A nested chain whose ideals are not ordered by inclusion.
    #[error("chain containment violated between levels {outer} and {inner}")]
    ChainContainment { outer: usize, inner: usize },

    /// Prime-field elements with different moduli, or mixed Q/F_p arithmetic.
    #[error("coefficient field mismatch: {0}")]
    FieldMismatch(String),

    /// Unknown reproduction case name.
    #[error("unknown case `{0}`")]
    UnknownCase(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
