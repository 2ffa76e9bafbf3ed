use thiserror::Error;

/// Everything that can go wrong in exact local-geometry computations.
///
/// These are diagnostic conditions, not panics: callers (in particular the
/// CLI) surface them as error reports. Internal-consistency violations that
/// should be unreachable under documented preconditions use
/// [`Error::Internal`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("series is not a unit (constant term is zero)")]
    NotAUnit,

    #[error("substitution target must vanish at the origin (no constant term)")]
    ConstantTermInSubstitution,

    #[error("linear part is not invertible")]
    NonInvertibleLinearPart,

    #[error("diffeomorphism must fix the origin (components have constant terms)")]
    ConstantTermInDiffeo,

    #[error("vector field components must vanish at the origin")]
    ConstantTermInVectorField,

    #[error("jet level {level} exceeds working truncation {trunc}")]
    JetLevelExceedsTruncation { level: u32, trunc: u32 },

    #[error("derivation is not nilpotent at this jet level")]
    NotNilpotent,

    #[error("automorphism is not unipotent at this jet level")]
    NotUnipotent,

    #[error("vector field has non-nilpotent linear part")]
    NonNilpotentLinearPart,

    #[error("diffeomorphism is not unipotent")]
    NotUnipotentDiffeo,

    #[error("curve parametrization must vanish at the origin")]
    ConstantTermInCurve,

    #[error("curve parametrization is identically zero")]
    ZeroCurve,

    #[error("curve parametrization is not primitive (exponent gcd {gcd} > 1)")]
    NotPrimitive { gcd: u32 },

    #[error("truncation {trunc} too small: {needed}")]
    InsufficientTruncation { trunc: u32, needed: String },

    #[error("blow-up depth limit: {0}")]
    DepthLimit(String),

    #[error("direction is not invariant under the linear part")]
    DirectionNotInvariant,

    #[error("jet levels differ: {0} vs {1}")]
    JetLevelMismatch(u32, u32),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}
