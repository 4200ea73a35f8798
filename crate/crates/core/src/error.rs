use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    Input(InputError),
    /// A minor-model update would break a branch-set invariant.
    Model(ModelError),
    /// The separator driver reached a state its invariants rule out.
    Logic(LogicError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    VertexOutOfRange { vertex: usize, n: usize },
    RootNotLive(usize),
    Unreached(usize),
    InvalidDelta(usize),
    InvalidH(usize),
    InvalidEll(usize),
    InvalidParams(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelError {
    EmptyBranch,
    BranchOutOfRange(usize),
    /// The candidate shares a vertex with branch `branch`.
    Overlap {
        branch: usize,
    },
    /// The branch (or candidate, `None`) does not induce a connected subgraph.
    Disconnected {
        branch: Option<usize>,
    },
    /// No edge joins the candidate to branch `branch`.
    NotAdjacent {
        branch: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicError {
    pub iteration: usize,
    pub message: String,
    /// Compact state dump taken when the error was raised.
    pub dump: String,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Input(e) => write!(f, "input error: {e}"),
            Error::Model(e) => write!(f, "model error: {e}"),
            Error::Logic(e) => write!(
                f,
                "logic error at iteration {}: {} [{}]",
                e.iteration, e.message, e.dump
            ),
        }
    }
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InputError::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for n = {n}")
            }
            InputError::RootNotLive(v) => write!(f, "root {v} is not in the live mask"),
            InputError::Unreached(v) => write!(f, "vertex {v} was not reached by the BFS"),
            InputError::InvalidDelta(d) => write!(f, "diameter bound must be >= 1, got {d}"),
            InputError::InvalidH(h) => write!(f, "minor size h must be >= 3, got {h}"),
            InputError::InvalidEll(l) => write!(f, "ell must be >= 1, got {l}"),
            InputError::InvalidParams(msg) => write!(f, "invalid instance parameters: {msg}"),
        }
    }
}

impl fmt::Display for ModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelError::EmptyBranch => write!(f, "branch set is empty"),
            ModelError::BranchOutOfRange(i) => write!(f, "no branch with index {i}"),
            ModelError::Overlap { branch } => write!(f, "overlaps branch {branch}"),
            ModelError::Disconnected { branch: Some(i) } => {
                write!(f, "branch {i} would be disconnected")
            }
            ModelError::Disconnected { branch: None } => write!(f, "candidate is disconnected"),
            ModelError::NotAdjacent { branch } => write!(f, "no edge to branch {branch}"),
        }
    }
}

impl From<InputError> for Error {
    fn from(e: InputError) -> Self {
        Error::Input(e)
    }
}

impl From<ModelError> for Error {
    fn from(e: ModelError) -> Self {
        Error::Model(e)
    }
}

impl core::error::Error for Error {}
