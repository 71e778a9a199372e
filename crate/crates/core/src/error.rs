//! Error types shared by every module in the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// All failure modes surfaced by the engine.
#[derive(Debug, Error)]
pub enum Error {
    #[error("zero vector: norm below 1e-12")]
    ZeroVector,

    #[error("vector length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("comment {comment_id} references unknown content {content_id}")]
    DanglingReference {
        comment_id: String,
        content_id: String,
    },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("no popular references available for scoring")]
    NoReferences,

    #[error("judge reply unparseable after retry: {reply:?}")]
    JudgeUnparseable { reply: String },

    #[error("backend error{}: {body}", status.map(|s| format!(" (status {s})")).unwrap_or_default())]
    Backend { status: Option<u16>, body: String },

    #[error("backend call timed out")]
    Timeout,

    #[error("generator produced no usable candidates: {0}")]
    Generator(String),

    #[error("shape mismatch: expected {expected}, got {actual}")]
    ShapeMismatch { expected: usize, actual: usize },

    #[error("degenerate batch: need at least 2 examples")]
    DegenerateBatch,

    #[error("training set contains a single class")]
    SingleClassDataset,

    #[error("empty candidate pool{}", message.as_ref().map(|m| format!(": {m}")).unwrap_or_default())]
    EmptyPool { message: Option<String> },

    #[error("empty input")]
    EmptyInput,

    #[error("empty candidate list")]
    EmptyCandidates,

    #[error("degenerate resonance field: aggregate vector is zero")]
    DegenerateField,

    #[error("invalid priors: {0}")]
    InvalidPriors(String),

    #[error("need at least {required} items, got {actual}")]
    InsufficientItems { required: usize, actual: usize },

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("stage {stage} failed: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// Wrap an error with the pipeline stage it occurred in.
    pub fn at_stage(self, stage: &'static str) -> Self {
        Error::Stage {
            stage,
            source: Box::new(self),
        }
    }

    pub fn empty_pool(message: impl Into<String>) -> Self {
        Error::EmptyPool {
            message: Some(message.into()),
        }
    }
}
