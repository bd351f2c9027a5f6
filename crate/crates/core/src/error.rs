use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Which budget cap a search ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BudgetResource {
    Trees,
    Nodes,
    Timeout,
}

impl std::fmt::Display for BudgetResource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BudgetResource::Trees => write!(f, "max enumerated trees"),
            BudgetResource::Nodes => write!(f, "max search nodes"),
            BudgetResource::Timeout => write!(f, "wall-clock timeout"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex `{0}` not found")]
    VertexNotFound(String),

    #[error("invalid vertex label `{0}` (labels must be non-empty, without whitespace, '#', '\"' or '\\')")]
    InvalidLabel(String),

    #[error("self-loop at `{0}`")]
    SelfLoop(String),

    #[error("source set is empty")]
    EmptySources,

    #[error("graph is empty")]
    EmptyGraph,

    #[error("graph is not connected")]
    Disconnected,

    #[error("not a spanning tree: {0}")]
    NotSpanningTree(String),

    #[error("center vertices `{0}` and `{1}` are not adjacent")]
    CenterNotAdjacent(String, String),

    #[error("sequence is not a simple path: {0}")]
    NotSimplePath(String),

    #[error("not a {stretch}-midst of the given path")]
    NotAMidst { stretch: u32 },

    #[error("invalid stretch {got}: {expected}")]
    InvalidStretch { got: u32, expected: &'static str },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invalid clause: {0}")]
    InvalidClause(String),

    #[error("assignment does not satisfy clause {index}")]
    UnsatisfiedClause { index: usize },

    #[error("instance has {count} variables, exceeding the exhaustive-search cap of {cap}")]
    TooManyVariables { count: usize, cap: usize },

    #[error("search budget exhausted ({resource})")]
    BudgetExhausted { resource: BudgetResource },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// True for the outcomes that mean "the search gave up", as opposed to
    /// "the answer is no".
    pub fn is_budget_exhausted(&self) -> bool {
        matches!(self, Error::BudgetExhausted { .. })
    }
}
