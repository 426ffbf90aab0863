use thiserror::Error;

/// Errors raised by the algebraic layer.
///
/// Segment witnesses are reported by label so that messages can be matched
/// against input files.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring selector `{0}` (expected z, q or zmod:<m>)")]
    InvalidRingSelector(String),
    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),
    #[error("cannot parse scalar `{0}`")]
    ScalarParse(String),
    #[error("fraction `{0}` is only allowed over the rationals")]
    FractionOutsideRationals(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("{n} is not invertible in {ring}")]
    NotInvertible { n: u64, ring: String },
    #[error("ring mismatch: {left} vs {right}")]
    RingMismatch { left: String, right: String },

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid element label `{0}` (labels must be non-empty and free of commas)")]
    InvalidLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("cover relations contain a cycle through `{0}`")]
    Cycle(String),
    #[error("`{x}` is not below `{y}`")]
    NotComparable { x: String, y: String },
    #[error("malformed segment key `{0}`")]
    SegmentKey(String),

    #[error("operands live in different incidence algebras")]
    AlgebraMismatch,
    #[error("order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("requested index {index} exceeds order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("expected {expected} entries, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("bracket index must be positive")]
    ZeroBracketIndex,

    #[error("operation requires the rationals, ring is {0}")]
    NotRational(String),
    #[error("map is not a derivation: fails on e_({a}) * e_({b})")]
    NotADerivation { a: String, b: String },
    #[error("component 0 must be the identity map")]
    NonIdentityLeadingMap,
    #[error("higher derivation fails the Leibniz rule ({count} violations, first at order {order} on e_({a}) * e_({b}))")]
    LeibnizViolated { count: usize, order: usize, a: String, b: String },
    #[error("invalid transitive map: {0}")]
    InvalidTransitiveMap(String),
    #[error("d_{order}(e_{x}) is non-zero")]
    NotAnnihilating { order: usize, x: String },
    #[error("d_{order}(e_({segment})) is not a multiple of e_({segment})")]
    NotDiagonal { order: usize, segment: String },
    #[error("series for `{0}` does not have constant term 1")]
    ConstantTermNotOne(String),
    #[error("invalid generator configuration: {0}")]
    InvalidConfig(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
