use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// The input relation is not a strict order; `cycle` lists the elements
    /// of a directed cycle in order (a single element for a reflexive pair).
    #[error("relation contains a cycle: {}", fmt_cycle(.cycle))]
    Cycle { cycle: Vec<usize> },

    #[error("element index {index} out of range for a poset of {n} elements")]
    Index { index: usize, n: usize },

    #[error("operation requires a nonempty poset")]
    EmptyPoset,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size error: {0}")]
    Size(String),

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("bad family: {0}")]
    BadFamily(String),

    #[error("no cap given for cardinal {0}")]
    CapMissing(String),

    #[error("cofinality is undefined for the finite cardinal {0}")]
    FiniteCardinal(u64),

    #[error("invalid ideal chain: {0}")]
    InvalidChain(String),

    #[error("node budget of {0} exhausted")]
    BudgetExhausted(u64),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

fn fmt_cycle(cycle: &[usize]) -> String {
    let mut s: Vec<String> = cycle.iter().map(|x| x.to_string()).collect();
    if let Some(first) = cycle.first() {
        s.push(first.to_string());
    }
    s.join(" < ")
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse_at(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
