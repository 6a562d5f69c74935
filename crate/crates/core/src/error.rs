use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("braid groups need at least 2 strands, got {0}")]
    TooFewStrands(usize),

    #[error("strand count mismatch: {left} vs {right}")]
    StrandMismatch { left: usize, right: usize },

    #[error("generator index {index} out of range for {strands} strands")]
    IndexOutOfRange { index: usize, strands: usize },

    #[error("operation requires a positive word")]
    NotPositive,

    #[error("relation {kind} does not match the letters at position {position}")]
    PatternMismatch { kind: char, position: usize },

    #[error("relation position {position} out of range for word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("invalid token {token:?}: {reason}")]
    Parse { token: String, reason: &'static str },

    #[error("oracle bound exceeded: {what} {value} > {limit}")]
    BoundExceeded {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),
}
