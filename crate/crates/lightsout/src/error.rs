use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Graphs are stored as one u64 adjacency row per vertex.
    #[error("graph capacity exceeded: {requested} vertices (max {max})")]
    Capacity { requested: usize, max: usize },

    #[error("invalid graph input: {0}")]
    Parse(String),

    /// An argument outside the range an exact algorithm supports.
    #[error("{what} out of supported range: {detail}")]
    Range { what: &'static str, detail: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("root bracketing failed for cubic with n={n}, e={e}, i={i}")]
    NoRoot { n: usize, e: usize, i: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }

    pub fn range(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Range {
            what,
            detail: detail.into(),
        }
    }
}
