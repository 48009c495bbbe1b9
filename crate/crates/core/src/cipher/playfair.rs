//! Playfair digraph cipher on a 5x5 key square.
//!
//! The square holds the 25 letters a–z without j (j is read as i). Plaintext
//! is cut into pairs left to right; a doubled pair gets a filler letter
//! between its halves and pairing continues over the lengthened stream, and
//! an odd stream is padded at the end.

use serde::{Deserialize, Serialize};

use super::VigenereKey;
use crate::error::CipherError;
use crate::text::{check_letters, normalize, NormalizedText, Policy};

const SIDE: usize = 5;

/// Filler placed between doubled letters and after an odd final letter.
pub const FILLER: u8 = b'x';
/// Filler used when the letter being separated or padded is itself `x`.
pub const FALLBACK_FILLER: u8 = b'q';

fn filler_for(letter: u8) -> u8 {
    if letter == FILLER {
        FALLBACK_FILLER
    } else {
        FILLER
    }
}

/// The 5x5 key square and its inverse lookup.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlayfairMatrix {
    cells: [[u8; SIDE]; SIDE],
    // indexed by letter - b'a'; the slot for j is unused
    position: [(u8, u8); 26],
}

impl PlayfairMatrix {
    pub fn new(key: &VigenereKey) -> Self {
        Self::from_keyword(key.as_str())
    }

    /// Build the square from any keyword. Non-letters are ignored and j is
    /// read as i, so an empty or letterless keyword gives the plain alphabet.
    pub fn from_keyword(keyword: &str) -> Self {
        let key = normalize(keyword, Policy::Playfair);
        let mut seen = [false; 26];
        seen[(b'j' - b'a') as usize] = true;
        let mut order = Vec::with_capacity(25);
        for b in key.letters().bytes().chain(b'a'..=b'z') {
            let slot = &mut seen[(b - b'a') as usize];
            if !*slot {
                *slot = true;
                order.push(b);
            }
        }
        debug_assert_eq!(order.len(), 25);

        let mut cells = [[0u8; SIDE]; SIDE];
        let mut position = [(u8::MAX, u8::MAX); 26];
        for (i, &b) in order.iter().enumerate() {
            let (row, col) = (i / SIDE, i % SIDE);
            cells[row][col] = b;
            position[(b - b'a') as usize] = (row as u8, col as u8);
        }
        PlayfairMatrix { cells, position }
    }

    pub fn cell(&self, row: usize, col: usize) -> char {
        self.cells[row][col] as char
    }

    /// The square as five strings of five letters.
    pub fn rows(&self) -> Vec<String> {
        self.cells
            .iter()
            .map(|row| row.iter().map(|&b| b as char).collect())
            .collect()
    }

    /// Row and column of `letter`; j is looked up as i.
    pub fn position_of(&self, letter: char) -> Option<(usize, usize)> {
        let b = match letter.to_ascii_lowercase() {
            'j' => b'i',
            c if c.is_ascii_lowercase() => c as u8,
            _ => return None,
        };
        let (r, c) = self.position[(b - b'a') as usize];
        Some((r as usize, c as usize))
    }

    fn pos(&self, b: u8) -> (usize, usize) {
        let (r, c) = self.position[(b - b'a') as usize];
        (r as usize, c as usize)
    }

    /// Map one digraph. `step` is 1 to encrypt and `SIDE - 1` to decrypt.
    fn map_pair(&self, a: u8, b: u8, step: usize) -> [u8; 2] {
        let (ra, ca) = self.pos(a);
        let (rb, cb) = self.pos(b);
        if ca == cb {
            [
                self.cells[(ra + step) % SIDE][ca],
                self.cells[(rb + step) % SIDE][cb],
            ]
        } else if ra == rb {
            [
                self.cells[ra][(ca + step) % SIDE],
                self.cells[rb][(cb + step) % SIDE],
            ]
        } else {
            [self.cells[ra][cb], self.cells[rb][ca]]
        }
    }
}

impl std::fmt::Display for PlayfairMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, row) in self.cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(|&b| (b as char).to_string()).collect();
            f.write_str(&cells.join(" "))?;
        }
        Ok(())
    }
}

/// How a plaintext was cut into digraphs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphPlan {
    pairs: Vec<[u8; 2]>,
    /// Indices into the padded stream where a filler was inserted.
    insertions: Vec<usize>,
    padded: bool,
}

impl DigraphPlan {
    pub fn pairs(&self) -> Vec<String> {
        self.pairs
            .iter()
            .map(|p| String::from_utf8_lossy(p).into_owned())
            .collect()
    }

    pub fn insertions(&self) -> &[usize] {
        &self.insertions
    }

    pub fn padded(&self) -> bool {
        self.padded
    }

    /// The pairs concatenated: the source with every filler in place.
    pub fn stream(&self) -> String {
        self.pairs.iter().flat_map(|p| p.iter().map(|&b| b as char)).collect()
    }

    /// Drop inserted and padding letters, giving back the source letters.
    pub fn source(&self) -> String {
        let stream = self.stream();
        let end = stream.len() - usize::from(self.padded);
        stream[..end]
            .char_indices()
            .filter(|(i, _)| self.insertions.binary_search(i).is_err())
            .map(|(_, c)| c)
            .collect()
    }
}

/// Cut a text into digraphs, left to right, reflowing after each insertion.
pub fn digraphs(plaintext: &NormalizedText) -> DigraphPlan {
    let text = if plaintext.policy() == Policy::Playfair {
        std::borrow::Cow::Borrowed(plaintext)
    } else {
        std::borrow::Cow::Owned(plaintext.with_policy(Policy::Playfair))
    };
    plan_letters(text.letters().as_bytes())
}

fn plan_letters(src: &[u8]) -> DigraphPlan {
    let mut pairs = Vec::with_capacity(src.len() / 2 + 1);
    let mut insertions = Vec::new();
    let mut padded = false;
    let mut i = 0;
    while i < src.len() {
        let a = src[i];
        match src.get(i + 1) {
            Some(&b) if b != a => {
                pairs.push([a, b]);
                i += 2;
            }
            Some(_) => {
                // the second copy of the letter starts the next pair
                insertions.push(pairs.len() * 2 + 1);
                pairs.push([a, filler_for(a)]);
                i += 1;
            }
            None => {
                pairs.push([a, filler_for(a)]);
                padded = true;
                i += 1;
            }
        }
    }
    DigraphPlan {
        pairs,
        insertions,
        padded,
    }
}

/// Redistribute the plaintext word lengths over the padded stream. An
/// inserted filler belongs to the word of the letter before it; the final
/// pad belongs to the last word.
fn adjusted_layout(layout: &[usize], plan: &DigraphPlan) -> Vec<usize> {
    let mut out = layout.to_vec();
    if out.is_empty() {
        return out;
    }
    // word index of each source letter
    let owner: Vec<usize> = layout
        .iter()
        .enumerate()
        .flat_map(|(w, &len)| std::iter::repeat_n(w, len))
        .collect();
    // each insertion at stream index p follows source letter p - k - 1,
    // where k insertions precede it
    for (k, &p) in plan.insertions.iter().enumerate() {
        out[owner[p - k - 1]] += 1;
    }
    if plan.padded {
        *out.last_mut().unwrap() += 1;
    }
    out
}

/// Encrypted letters together with the word lengths they should be printed
/// with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayfairCiphertext {
    pub letters: String,
    pub layout: Vec<usize>,
}

impl PlayfairCiphertext {
    pub fn spaced(&self) -> String {
        crate::text::regroup(&self.letters, &self.layout).expect("layout covers every letter")
    }
}

pub fn encrypt(plaintext: &NormalizedText, key: &PlayfairMatrix) -> PlayfairCiphertext {
    let plan = digraphs(plaintext);
    let letters = plan
        .pairs
        .iter()
        .flat_map(|&[a, b]| key.map_pair(a, b, 1))
        .map(|b| b as char)
        .collect();
    let layout = adjusted_layout(plaintext.layout(), &plan);
    PlayfairCiphertext { letters, layout }
}

/// Invert the three rules. Filler letters stay in the output.
pub fn decrypt(ciphertext: &str, key: &PlayfairMatrix) -> Result<String, CipherError> {
    check_letters(ciphertext, Policy::Playfair)?;
    if !ciphertext.len().is_multiple_of(2) {
        return Err(CipherError::OddLength(ciphertext.len()));
    }
    let bytes = ciphertext.as_bytes();
    Ok(bytes
        .chunks_exact(2)
        .flat_map(|pair| key.map_pair(pair[0], pair[1], SIDE - 1))
        .map(|b| b as char)
        .collect())
}
