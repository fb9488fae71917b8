use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid tracking rule {m},{n},{l}: need 1 <= m <= n and 1 <= l <= n")]
    InvalidRule { m: usize, n: usize, l: usize },

    #[error("malformed rule {0:?}: expected \"m,n,l\"")]
    MalformedRule(String),

    #[error("invalid character {ch:?} at position {pos}: expected '0' or '1'")]
    InvalidBit { pos: usize, ch: char },

    #[error("window length {0} exceeds the automaton limit of 16")]
    WindowTooLarge(usize),

    #[error("string length {0} exceeds the enumeration limit of 24")]
    RangeTooLarge(usize),

    #[error("tournament size {size} exceeds the limit of {max}")]
    SizeTooLarge { size: usize, max: usize },

    #[error("{0} is not a basic tournament size (expected 1, 3, 4 or 5)")]
    InvalidBasicSize(usize),

    #[error("index {0} is outside the domain of the sequence")]
    IndexOutOfRange(usize),

    #[error("not a unique tournament")]
    NotUnique,

    #[error("not an initial-loss non-tracking string")]
    NotDecomposable,

    #[error("{0:?} produces a track")]
    InputTracks(String),

    #[error("initial-loss string \"0\" has no non-tracking preimage")]
    TooShort,

    #[error("invalid tournament encoding: {0}")]
    InvalidTournament(String),

    #[error("invalid sequence id {0:?}: expected 'A' followed by 6 digits")]
    InvalidSequenceId(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("index gap on line {line}: expected {expected}, found {found}")]
    Gap {
        line: usize,
        expected: u64,
        found: u64,
    },

    #[error("local and remote sequences do not overlap")]
    NoOverlap,

    #[error("network error: {0}")]
    Network(String),

    #[error("no cached or bundled b-file available for {0}")]
    Unavailable(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
