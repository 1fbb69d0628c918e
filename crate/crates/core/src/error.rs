use thiserror::Error;

/// Errors raised by the algebra kernel and the laboratory.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands belong to different rings ({0} vs {1})")]
    MixedRings(String, String),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("bad field: {0}")]
    BadField(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error("not computable: {0}")]
    NotComputable(String),
    #[error("universe too large to enumerate: {0}")]
    TooLarge(String),
    #[error("not enumerable: {0}")]
    NotEnumerable(String),
    #[error("map is not an endomorphism: {0}")]
    NotEndomorphism(String),
    #[error("rewriting rule {0} does not decrease the weight")]
    NonTerminating(String),
    #[error("rewriting system is not confluent: {0}")]
    NonConfluent(String),
    #[error("degree cap is not an ideal: rule {0} lowers degree")]
    CapNotIdeal(String),
    #[error("variable map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("element {0} is outside the monoid carrier")]
    OutOfCarrier(String),
    #[error("operands live in different contexts: {0}")]
    ContextMismatch(String),
    #[error("zero series has no least support element")]
    ZeroSeries,
    #[error("zero polynomial has no degree")]
    ZeroPoly,
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeadingCoefficient(String),
    #[error("least support exponent {0} is not zero")]
    NonZeroLeadingExponent(String),
    #[error("operation unsupported for monoid {0}")]
    UnsupportedMonoid(String),
    #[error("omega is undefined at {0}")]
    OmegaUndefined(String),
    #[error("twist has no two-sided inverse on {0}")]
    NotInvertibleTwist(String),
    #[error("twist is not injective: {0}")]
    NotInjective(String),
    #[error("preimage search exhausted: {0}")]
    PreimageSearchExhausted(String),
    #[error("ring is not rigid, witness {0}")]
    NotRigid(String),
    #[error("recursion violated at n = {0}")]
    RecursionViolated(u64),
    #[error("unknown scenario {0}")]
    UnknownScenario(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
