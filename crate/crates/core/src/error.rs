use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator index {index} outside the declared set of {count} generators")]
    GeneratorMismatch { index: usize, count: usize },

    #[error("relation `{relation}` cannot be oriented: both sides share the leading word")]
    Unorientable { relation: String },

    #[error("rewriting system is not confluent: `{word}` reduces to `{left}` and to `{right}`")]
    NotConfluent {
        word: String,
        left: String,
        right: String,
    },

    #[error("input of degree {degree} exceeds the certified confluence degree {certified}")]
    DegreeExceedsCertificate { degree: usize, certified: usize },

    #[error("tensor arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("tensor operands live over different algebras")]
    CarrierMismatch,

    #[error("slot map would produce arity {0}, outside 0..=3")]
    ArityOutOfRange(usize),

    #[error(
        "{map} is not well defined on relation `{relation}`: lhs gives {lhs}, rhs gives {rhs}"
    )]
    WellDefinedness {
        map: String,
        relation: String,
        lhs: String,
        rhs: String,
    },

    #[error("`{element}` is not a unit: {reason}")]
    NotAUnit { element: String, reason: String },

    #[error("coproduct of x has a term of bidegree ({i}, {j}) in x; only bidegrees up to (1, 1) are allowed")]
    HigherDegreeTerm { i: usize, j: usize },

    #[error("identity `{name}` fails: {witness}")]
    IdentityFailed { name: String, witness: String },

    #[error("premise `{name}` fails: {witness}")]
    PremiseFailed { name: String, witness: String },

    #[error("{0}")]
    Invalid(String),

    #[error("line {line}, column {col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("line {line}, column {col}: undeclared symbol `{name}`")]
    UndeclaredSymbol {
        name: String,
        line: usize,
        col: usize,
    },

    #[error("line {line}, column {col}: {inner}")]
    Located {
        line: usize,
        col: usize,
        inner: Box<Error>,
    },
}
