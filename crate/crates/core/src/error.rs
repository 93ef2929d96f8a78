use thiserror::Error;

/// Errors raised by constructions whose preconditions are not met.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands are over different alphabets")]
    AlphabetMismatch,
    #[error("automaton is not deterministic")]
    NotDeterministic,
    #[error("automaton is not co-Büchi (colors must be 1 or 2)")]
    NotCoBuchi,
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("an automaton needs at least one state")]
    NoStates,
    #[error("an alphabet needs at least one letter")]
    EmptyAlphabet,
    #[error("the period of a lasso word must be non-empty")]
    EmptyPeriod,
    #[error("letter subset must be non-empty")]
    EmptySubset,
    #[error("operation needs at least one operand")]
    NoOperands,
    #[error("chain lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("position {0} is outside the period")]
    BadPosition(usize),
    #[error("family parameter k must be at least 1")]
    InvalidK,
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("malformed lasso literal: {0}")]
    BadLasso(String),
}

pub type Result<T> = std::result::Result<T, Error>;
