use thiserror::Error;

/// Errors produced by model construction, evaluation and analysis.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: function takes {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("integer overflow while evaluating the generating function at {context}")]
    Overflow { context: String },

    #[error("invalid generating function: {0}")]
    InvalidGenFn(String),

    #[error("invalid set specification: {0}")]
    InvalidSetSpec(String),

    #[error("base set is empty when materialized at cap {cap}")]
    EmptyBase { cap: u64 },

    #[error("invalid bound: {0}")]
    InvalidBound(String),

    #[error("model schema error{}: {message}", position.as_deref().map(|p| format!(" at {p}")).unwrap_or_default())]
    Schema {
        message: String,
        position: Option<String>,
    },

    #[error("subset enumeration requires cap <= {max}, got {got}")]
    CapTooLargeForEnumeration { max: u64, got: u64 },

    #[error("function is not classified as {needed}")]
    StructurePrecondition { needed: &'static str },

    #[error("the identity function is a self-loop; no non-self-loop witness exists for it")]
    IdentityFunction,

    #[error(
        "no tuple with a natural value outside its coordinates found up to cap {cap}; \
             the complement-base recipe has no instance within this search range"
    )]
    NoBaseWitness { cap: u64 },

    #[error(
        "unary additive generating functions cover the naturals only when the base \
             contains 1 or is infinite; base {base} satisfies neither"
    )]
    UnaryAdditiveImpossible { base: String },

    #[error(
        "no multiplicative construction is known for a singleton base; \
             whether one always exists is an open question"
    )]
    SingletonMultiplicative,

    #[error("multiplicative construction needs arity >= 2, got {got}")]
    MultiplicativeArity { got: usize },

    #[error("reduction refused: step counts compare as n(m1) {n1} > n(m2) {n2}")]
    NotReducible { n1: String, n2: String },

    #[error("reducibility is undecided at this bound ({detail}); pass an explicit override to build anyway")]
    UndecidedReduction { detail: String },

    #[error("relation is not total on the bounded closure of the target model; missing entries for {missing}")]
    RelationNotTotal { missing: String },

    #[error("proof plan refused: the relation failed verification ({detail})")]
    UnverifiedRelation { detail: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        let position = if e.line() > 0 {
            Some(format!("line {}, column {}", e.line(), e.column()))
        } else {
            None
        };
        Error::Schema {
            message: e.to_string(),
            position,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
