use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vertex id is not below the vertex count.
    VertexOutOfRange { vertex: usize, n: usize },
    /// An edge `(v, v)` was supplied.
    SelfLoop { vertex: usize },
    /// The operation is undefined on the graph with no vertices.
    EmptyGraph,
    /// The input exceeds a hard size limit of an exact method.
    TooLarge { what: &'static str, size: usize, limit: usize },
    /// A search ran out of its node budget before finishing.
    Budget { what: &'static str, limit: u64 },
    /// A parameter violates the operation's preconditions.
    InvalidParameter(String),
}

impl Error {
    pub fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, Error::Budget { .. })
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            Error::SelfLoop { vertex } => write!(f, "self-loop ({vertex},{vertex}) not allowed"),
            Error::EmptyGraph => f.write_str("graph has no vertices"),
            Error::TooLarge { what, size, limit } => {
                write!(f, "{what}: size {size} exceeds limit {limit}")
            }
            Error::Budget { what, limit } => {
                write!(f, "{what}: budget of {limit} nodes exhausted")
            }
            Error::InvalidParameter(msg) => f.write_str(msg),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
