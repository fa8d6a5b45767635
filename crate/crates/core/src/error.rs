use thiserror::Error;

/// Structural problems with a head vector.
#[derive(Clone, Debug, Eq, Error, PartialEq)]
pub enum TreeError {
    #[error("sentence has no words")]
    Empty,

    #[error("length mismatch: {heads} heads, {forms} forms, {deprels} relations")]
    LengthMismatch {
        heads: usize,
        forms: usize,
        deprels: usize,
    },

    #[error("head {head} of word {word} is out of range (sentence length {n})")]
    HeadOutOfRange { word: usize, head: usize, n: usize },

    #[error("word {word} is its own head")]
    SelfLoop { word: usize },

    #[error("cycle through word {word}")]
    Cycle { word: usize },

    #[error("expected exactly one root word, found {roots}")]
    RootCount { roots: usize },
}

/// A label string that is neither a valid bit string nor valid bracket syntax.
#[derive(Clone, Debug, Eq, Error, PartialEq)]
#[error("unknown {width}-bit label syntax: {label:?}")]
pub struct LabelError {
    pub label: String,
    pub width: usize,
}

/// Errors reading CoNLL-U data.
#[derive(Debug, Error)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },

    #[error("line {line}: invalid token index {value:?}")]
    TokenIndex { line: usize, value: String },

    #[error("line {line}: token index {found} out of sequence, expected {expected}")]
    TokenSequence {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: non-integer head {value:?}")]
    NonIntegerHead { line: usize, value: String },

    #[error("line {line}: {source}")]
    Tree {
        line: usize,
        #[source]
        source: TreeError,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl ConlluError {
    /// Line the error was detected on, if any.
    pub fn line(&self) -> Option<usize> {
        match self {
            ConlluError::ColumnCount { line, .. }
            | ConlluError::TokenIndex { line, .. }
            | ConlluError::TokenSequence { line, .. }
            | ConlluError::NonIntegerHead { line, .. }
            | ConlluError::Tree { line, .. } => Some(*line),
            ConlluError::Io(_) => None,
        }
    }
}

/// Errors reading label files.
#[derive(Debug, Error)]
pub enum LabelFileError {
    #[error("line {line}: expected 4 tab-separated columns, found {found}")]
    Ragged { line: usize, found: usize },

    #[error("line {line}: {source}")]
    Label {
        line: usize,
        #[source]
        source: LabelError,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
