use thiserror::Error;

/// Contract violations raised by the cipher and text operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CipherError {
    #[error("caesar shift must be between 0 and 25, got {0}")]
    ShiftOutOfRange(i64),
    #[error("caesar key must be an integer, got {0:?}")]
    NotAShift(String),
    #[error("key must contain at least one letter")]
    EmptyKey,
    #[error("key contains a non-letter character {0:?}")]
    InvalidKeyChar(char),
    #[error("expected a letter at position {index}, found {found:?}")]
    NotALetter { index: usize, found: char },
    #[error("layout covers {layout} letters but the text has {letters}")]
    LayoutMismatch { letters: usize, layout: usize },
    #[error("playfair ciphertext must have even length, got {0}")]
    OddLength(usize),
}

/// Contract violations raised by the attack routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("input text is empty")]
    EmptyInput,
    #[error("need at least {needed} letters, got {got}")]
    TooShort { needed: usize, got: usize },
    #[error("maximum key length must be between 1 and 20, got {0}")]
    MaxKeyLength(usize),
    #[error("key length must be at least 1")]
    ZeroKeyLength,
    #[error("column {0} has no letters")]
    EmptyColumn(usize),
    #[error("digraph statistics need an even number of letters, got {0}")]
    OddLength(usize),
    #[error("invalid frequency table: {0}")]
    FrequencyTable(String),
    #[error(transparent)]
    Cipher(#[from] CipherError),
}
