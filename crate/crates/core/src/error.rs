use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {element} is outside the universe 1..={n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("set index {index} is outside 1..={m}")]
    SetOutOfRange { index: usize, m: usize },

    #[error("agent {agent} is outside 1..={n}")]
    AgentOutOfRange { agent: usize, n: usize },

    #[error("set {set} lists element {element} more than once")]
    DuplicateElement { set: usize, element: usize },

    #[error("expected {expected} {what}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    /// A bound larger than `k` can never be met (demands) and breaks the
    /// complement (capacities); the instance answer is NO without solving.
    #[error("element {element} has bound {bound} > k = {k}")]
    TriviallyInfeasible {
        element: usize,
        bound: usize,
        k: usize,
    },

    #[error("unsupported variant: {0}")]
    Unsupported(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("enumeration of {count} candidates exceeds the limit of {limit}")]
    GuardExceeded { count: u128, limit: u128 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
