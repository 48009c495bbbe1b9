//! Letter-stream normalization and spacing-preserving output.
//!
//! Every cipher in this crate works on a bare stream of lowercase letters.
//! [`normalize`] strips a raw string down to that stream and remembers how
//! long each whitespace-separated word was, so that [`regroup`] can print the
//! ciphertext with the same spacing as the plaintext ("hss nvvk aopunz").

use serde::{Deserialize, Serialize};

use crate::error::CipherError;

/// Which alphabet a [`NormalizedText`] is restricted to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    /// The 26 letters a–z.
    Standard,
    /// The 25-letter Playfair alphabet: j is folded into i.
    Playfair,
}

impl Policy {
    pub fn accepts(self, letter: u8) -> bool {
        match self {
            Policy::Standard => letter.is_ascii_lowercase(),
            Policy::Playfair => letter.is_ascii_lowercase() && letter != b'j',
        }
    }
}

/// A lowercase letter stream plus the word lengths it was cut from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NormalizedText {
    letters: String,
    layout: Vec<usize>,
    policy: Policy,
}

impl NormalizedText {
    pub fn letters(&self) -> &str {
        &self.letters
    }

    pub fn layout(&self) -> &[usize] {
        &self.layout
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Re-express the same text under another policy. Moving to
    /// [`Policy::Playfair`] folds every j into i; the layout is unchanged.
    pub fn with_policy(&self, policy: Policy) -> NormalizedText {
        let letters = match policy {
            Policy::Standard => self.letters.clone(),
            Policy::Playfair => self.letters.replace('j', "i"),
        };
        NormalizedText {
            letters,
            layout: self.layout.clone(),
            policy,
        }
    }

    /// The letters re-spaced by the original word layout.
    pub fn spaced(&self) -> String {
        // sum(layout) == len(letters) holds by construction
        regroup(&self.letters, &self.layout).expect("layout invariant")
    }
}

impl std::fmt::Display for NormalizedText {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.spaced())
    }
}

/// Fold case, drop everything that is not an ASCII letter, and record the
/// length of each whitespace-separated word.
///
/// Punctuation inside a word (an apostrophe, a hyphen) is removed without
/// splitting the word. A word that loses all of its letters leaves no entry
/// in the layout.
pub fn normalize(raw: &str, policy: Policy) -> NormalizedText {
    let mut letters = String::with_capacity(raw.len());
    let mut layout = Vec::new();
    for word in raw.split_whitespace() {
        let before = letters.len();
        for ch in word.chars() {
            if !ch.is_ascii_alphabetic() {
                continue;
            }
            let mut lower = ch.to_ascii_lowercase();
            if policy == Policy::Playfair && lower == 'j' {
                lower = 'i';
            }
            letters.push(lower);
        }
        let width = letters.len() - before;
        if width > 0 {
            layout.push(width);
        }
    }
    NormalizedText {
        letters,
        layout,
        policy,
    }
}

/// Split `letters` into space-separated groups of the given lengths.
pub fn regroup(letters: &str, layout: &[usize]) -> Result<String, CipherError> {
    let total: usize = layout.iter().sum();
    if total != letters.len() || !letters.is_ascii() {
        return Err(CipherError::LayoutMismatch {
            letters: letters.len(),
            layout: total,
        });
    }
    let mut out = String::with_capacity(letters.len() + layout.len());
    let mut start = 0;
    for (i, &width) in layout.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.push_str(&letters[start..start + width]);
        start += width;
    }
    Ok(out)
}

/// Check that `letters` is a bare stream of lowercase a–z.
pub(crate) fn check_letters(letters: &str, policy: Policy) -> Result<(), CipherError> {
    match letters
        .bytes()
        .enumerate()
        .find(|&(_, b)| !policy.accepts(b))
    {
        Some((index, _)) => Err(CipherError::NotALetter {
            index,
            found: letters[index..].chars().next().unwrap_or('?'),
        }),
        None => Ok(()),
    }
}
