use serde::{Deserialize, Serialize};

use crate::cipher::CipherKind;

pub const LEVEL_COUNT: u8 = 3;

/// One level of the game. Level 1 is Caesar, 2 is Vigenère, 3 is Playfair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub number: u8,
    pub cipher: CipherKind,
    pub title: String,
    pub story_panel: String,
}

impl Level {
    /// The cipher a level number is tied to.
    pub fn cipher_for(number: u8) -> Option<CipherKind> {
        match number {
            1 => Some(CipherKind::Caesar),
            2 => Some(CipherKind::Vigenere),
            3 => Some(CipherKind::Playfair),
            _ => None,
        }
    }
}
