use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty track list")]
    EmptyTracks,
    #[error("symbol {symbol} is outside the base set of track {track}")]
    SymbolOutOfRange { track: usize, symbol: u32 },
    #[error("composite symbol {0} is not in the alphabet")]
    BadComposite(u32),
    #[error("malformed convolution at column {column}: padding is not a suffix on track {track}")]
    PaddingNotSuffix { column: usize, track: usize },
    #[error("alphabet mismatch between automata")]
    AlphabetMismatch,
    #[error("expected {expected} tracks, got {found}")]
    TrackCount { expected: usize, found: usize },
    #[error("unknown primitive relation `{0}`")]
    UnknownRelation(String),
    #[error("relation is not functionally bounded: witness {witness}")]
    GapViolation { witness: String },
    #[error("no rule of f applies to {0}")]
    NoRule(String),
    #[error("invalid presentation: {0}")]
    Presentation(String),
    #[error("element not representable: {0}")]
    NotRepresentable(String),
    #[error("bound violated: {0}")]
    BoundViolation(String),
    #[error("invalid Turing machine: {0}")]
    Machine(String),
    #[error("malformed configuration: {0}")]
    Config(String),
    #[error("invalid normal form: {0}")]
    NormalForm(String),
    #[error("invalid matrix: {0}")]
    Matrix(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
