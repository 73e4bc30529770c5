use thiserror::Error;

/// Errors shared across circuit evaluation, reduction and parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An evaluated value (or an exponent needed to build one) does not fit
    /// in the requested number of bits. Circuit values grow as towers of
    /// exponents, so this is an expected outcome, not a bug.
    #[error("value exceeds the bit budget of {budget} bits")]
    BudgetExceeded { budget: u64 },

    /// Some vertex has a negative exponent sum, so its value would not be an
    /// integer. Valid circuits never trip this.
    #[error("circuit violates integrality: a vertex has a negative exponent sum")]
    NonInteger,

    /// Division by a power of two that does not divide the dividend. Callers
    /// treat this as a failed Britton condition.
    #[error("value is not divisible by the requested power of two")]
    NotDivisible,

    /// Malformed circuit file.
    #[error("circuit parse error at line {line}: {msg}")]
    CircuitParse { line: usize, msg: String },

    /// Malformed word.
    #[error("word parse error at byte {offset}: {msg}")]
    WordParse { offset: usize, msg: String },
}
