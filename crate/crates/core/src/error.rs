use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in the range [2, 2^31)")]
    NotPrime(u64),

    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("field mismatch: GF({0}) vs GF({1})")]
    FieldMismatch(u32, u32),

    #[error("algebra mismatch: {0}")]
    AlgebraMismatch(String),

    #[error("associativity fails at (i,j,k)=({i},{j},{k})")]
    Associativity { i: usize, j: usize, k: usize },

    #[error("unit law fails at basis element {0}")]
    UnitLaw(usize),

    #[error("unit does not act as the identity")]
    ActionUnit,

    #[error("action is not multiplicative at (i,j)=({i},{j})")]
    ActionMultiplicativity { i: usize, j: usize },

    #[error("not an algebra morphism: {0}")]
    NotMorphism(String),

    #[error("not a module morphism: {0}")]
    NotIntertwiner(String),

    #[error("algebra was not built as an enveloping algebra")]
    NotEnveloping,

    #[error("algebra is not commutative")]
    NotCommutative,

    #[error("actions do not commute: {0}")]
    NotCommuting(String),

    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i64),

    #[error("bar resolution needs {required} dimensions, size cap is {cap}")]
    SizeCap { required: usize, cap: usize },

    #[error("degree {degree} outside the window [{lo}, {hi}]")]
    DegreeOutOfRange { degree: i64, lo: i64, hi: i64 },

    #[error("degree {requested} exceeds validity bound {bound}")]
    ValidityBound { requested: usize, bound: usize },

    #[error("unknown builtin algebra `{0}`")]
    UnknownBuiltin(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}
