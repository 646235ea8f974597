use thiserror::Error;

/// Crate-wide error type. Variants carry enough position or context
/// to be printed directly by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // ---- arithmetic ----
    #[error("division by zero")]
    DivisionByZero,
    #[error("unsupported divisor: {0}")]
    UnsupportedDivisor(String),
    #[error("negative radicand: {0}")]
    NegativeRadicand(String),
    #[error("unsupported radicand: {0}")]
    UnsupportedRadicand(String),

    // ---- expressions ----
    #[error("expression is not linear in {0}")]
    NotLinear(String),
    #[error("substitution target {0} appears in a denominator that cannot absorb it")]
    DenominatorSubstitution(String),

    // ---- notation ----
    #[error("lex error at line {line}, col {col}: {msg}")]
    Lex { line: usize, col: usize, msg: String },
    #[error("syntax error at line {line}, col {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    // ---- rewrite engine ----
    #[error("multiplying both sides by zero is not reversible")]
    ZeroFactor,
    #[error("chain mismatch: {0}")]
    ChainMismatch(String),
    #[error("iroha labels exhausted: block has {0} terms")]
    IrohaExhausted(usize),
    #[error("unknown id {0}")]
    UnknownId(String),
    #[error("step {id}: {msg}")]
    Step { id: String, msg: String },

    // ---- units ----
    #[error("unknown unit {0}")]
    UnknownUnit(String),
    #[error("unit order violation: {0}")]
    UnitOrder(String),
    #[error("malformed quantity: {0}")]
    Quantity(String),

    // ---- problem files ----
    #[error("problem file line {line}: {msg}")]
    Problem { line: usize, msg: String },

    // ---- evaluation ----
    #[error("unbound symbol {0}")]
    UnboundSymbol(String),

    // ---- geometry ----
    #[error("degenerate configuration: {0}")]
    Geometry(String),
}

pub type Result<T> = std::result::Result<T, Error>;
