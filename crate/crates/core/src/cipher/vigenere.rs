//! Polyalphabetic shift cipher keyed by a repeating word.
//!
//! Encryption is the tableau lookup: the plaintext letter picks the column,
//! the key letter picks the row, and the cell is `(plain + key) mod 26`.

use serde::{Deserialize, Serialize};

use super::{letter_index, shift_letter};
use crate::error::CipherError;
use crate::text::{check_letters, NormalizedText, Policy};

/// A nonempty keyword of lowercase letters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VigenereKey(String);

impl VigenereKey {
    /// Case is folded; anything other than an ASCII letter is rejected.
    pub fn new(word: &str) -> Result<Self, CipherError> {
        if let Some(bad) = word.chars().find(|c| !c.is_ascii_alphabetic()) {
            return Err(CipherError::InvalidKeyChar(bad));
        }
        if word.is_empty() {
            return Err(CipherError::EmptyKey);
        }
        Ok(VigenereKey(word.to_ascii_lowercase()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The key repeated cyclically and cut to exactly `n` letters.
    pub fn extend(&self, n: usize) -> String {
        self.0.chars().cycle().take(n).collect()
    }

    fn shifts(&self) -> impl Iterator<Item = u8> + Clone + '_ {
        self.0.bytes().map(letter_index).cycle()
    }
}

impl TryFrom<String> for VigenereKey {
    type Error = CipherError;

    fn try_from(word: String) -> Result<Self, Self::Error> {
        VigenereKey::new(&word)
    }
}

impl From<VigenereKey> for String {
    fn from(key: VigenereKey) -> String {
        key.0
    }
}

impl std::str::FromStr for VigenereKey {
    type Err = CipherError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VigenereKey::new(s)
    }
}

impl std::fmt::Display for VigenereKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn extend_key(key: &VigenereKey, n: usize) -> String {
    key.extend(n)
}

pub fn encrypt(plaintext: &NormalizedText, key: &VigenereKey) -> String {
    plaintext
        .letters()
        .bytes()
        .zip(key.shifts())
        .map(|(p, k)| shift_letter(p, k) as char)
        .collect()
}

pub fn decrypt(ciphertext: &str, key: &VigenereKey) -> Result<String, CipherError> {
    check_letters(ciphertext, Policy::Standard)?;
    Ok(ciphertext
        .bytes()
        .zip(key.shifts())
        .map(|(c, k)| shift_letter(c, (26 - k) % 26) as char)
        .collect())
}
