//! Classical ciphers, the attacks that break them, and the game that
//! teaches them.
//!
//! * [`text`] turns raw input into letter streams and back into spaced text.
//! * [`cipher`] holds Caesar, Vigenère and Playfair.
//! * [`analysis`] cracks Caesar and Vigenère and computes Playfair digraph
//!   statistics. Its statistics are generic over [`num_traits::Float`]; the
//!   aliases below fix the scalar to `f64`.
//! * [`game`] runs the levels, challenge bank, scoring and scoreboard.

pub mod analysis;
pub mod cipher;
pub mod data;
pub mod error;
pub mod game;
pub mod text;

pub use cipher::{CaesarKey, CipherKind, DigraphPlan, PlayfairMatrix, VigenereKey};
pub use error::{AnalysisError, CipherError};
pub use text::{normalize, regroup, NormalizedText, Policy};

/// English frequency table in double precision.
pub type FrequencyTable = analysis::LetterFrequencyTable<f64>;
/// Caesar crack candidate in double precision.
pub type ShiftCandidate = analysis::ShiftCandidate<f64>;
/// Vigenère key-length candidate in double precision.
pub type KeyLengthCandidate = analysis::KeyLengthCandidate<f64>;
/// Single-precision variants, for callers that store many statistics.
pub type FrequencyTable32 = analysis::LetterFrequencyTable<f32>;
pub type ShiftCandidate32 = analysis::ShiftCandidate<f32>;
pub type KeyLengthCandidate32 = analysis::KeyLengthCandidate<f32>;
