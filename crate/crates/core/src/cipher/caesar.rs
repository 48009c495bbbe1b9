//! Shift cipher over the 26-letter alphabet.

use serde::{Deserialize, Serialize};

use super::shift_letter;
use crate::error::CipherError;
use crate::text::{check_letters, NormalizedText, Policy};

/// A shift in `0..=25`. Out-of-range values are rejected, not reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct CaesarKey(u8);

impl CaesarKey {
    pub fn new(shift: i64) -> Result<Self, CipherError> {
        if (0..26).contains(&shift) {
            Ok(CaesarKey(shift as u8))
        } else {
            Err(CipherError::ShiftOutOfRange(shift))
        }
    }

    pub fn shift(self) -> u8 {
        self.0
    }

    /// The shift that undoes this one.
    pub fn inverse(self) -> CaesarKey {
        CaesarKey((26 - self.0) % 26)
    }
}

impl TryFrom<i64> for CaesarKey {
    type Error = CipherError;

    fn try_from(shift: i64) -> Result<Self, Self::Error> {
        CaesarKey::new(shift)
    }
}

impl From<CaesarKey> for i64 {
    fn from(key: CaesarKey) -> i64 {
        key.0 as i64
    }
}

impl std::str::FromStr for CaesarKey {
    type Err = CipherError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let shift = s
            .trim()
            .parse::<i64>()
            .map_err(|_| CipherError::NotAShift(s.to_string()))?;
        CaesarKey::new(shift)
    }
}

pub fn encrypt(plaintext: &NormalizedText, key: CaesarKey) -> String {
    apply(plaintext.letters(), key.shift())
}

pub fn decrypt(ciphertext: &str, key: CaesarKey) -> Result<String, CipherError> {
    check_letters(ciphertext, Policy::Standard)?;
    Ok(apply(ciphertext, key.inverse().shift()))
}

pub(crate) fn apply(letters: &str, shift: u8) -> String {
    letters.bytes().map(|b| shift_letter(b, shift) as char).collect()
}
