//! The three classical ciphers: Caesar, Vigenère and Playfair.
//!
//! All functions here are pure. Ciphertext is always the bare letter
//! stream; use [`crate::text::regroup`] to print it with spacing.

pub mod caesar;
pub mod playfair;
pub mod vigenere;

pub use caesar::CaesarKey;
pub use playfair::{DigraphPlan, PlayfairMatrix};
pub use vigenere::VigenereKey;

use serde::{Deserialize, Serialize};

/// The cipher a level or challenge is built on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CipherKind {
    Caesar,
    Vigenere,
    Playfair,
}

impl CipherKind {
    pub fn name(self) -> &'static str {
        match self {
            CipherKind::Caesar => "caesar",
            CipherKind::Vigenere => "vigenere",
            CipherKind::Playfair => "playfair",
        }
    }
}

impl std::fmt::Display for CipherKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CipherKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "caesar" => Ok(CipherKind::Caesar),
            "vigenere" | "vigenère" => Ok(CipherKind::Vigenere),
            "playfair" => Ok(CipherKind::Playfair),
            other => Err(format!("unknown cipher {other:?}")),
        }
    }
}

#[inline]
pub(crate) fn letter_index(b: u8) -> u8 {
    b - b'a'
}

#[inline]
pub(crate) fn shift_letter(b: u8, shift: u8) -> u8 {
    b'a' + (letter_index(b) + shift) % 26
}
