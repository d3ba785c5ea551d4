use thiserror::Error;

/// Errors produced by the simulator, game engine, and harness.
#[derive(Debug, Error)]
pub enum Error {
    /// A node action referenced a channel outside `[1, channels]` or was
    /// otherwise malformed.
    #[error("invalid action: {0}")]
    InvalidAction(String),

    /// An action or lookup referenced a node id outside the topology.
    #[error("invalid node: {0}")]
    InvalidNode(String),

    /// A precondition on an operation's inputs was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A graph failed validation (disconnected, self loops, bad ids).
    #[error("invalid topology: {0}")]
    InvalidTopology(String),

    /// A player emitted a proposal outside the game universe.
    #[error("invalid proposal: {0}")]
    InvalidProposal(String),

    /// Two set families over different universes were combined.
    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    /// Exhaustive verification refused a universe above the configured limit.
    #[error("universe size {0} exceeds the exhaustive verification limit {1}")]
    UniverseTooLarge(usize, usize),

    /// A harness configuration could not be resolved.
    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
