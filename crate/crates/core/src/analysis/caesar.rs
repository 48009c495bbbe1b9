use std::cmp::Ordering;

use num_traits::Float;

use super::frequency::{chi_squared_counts, letter_counts, LetterFrequencyTable};
use crate::cipher::caesar;
use crate::error::AnalysisError;
use crate::text::{check_letters, Policy};

/// Letters of candidate plaintext kept for display.
pub const PREVIEW_LEN: usize = 40;

/// One guessed shift and how English-like its decryption looks.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftCandidate<T> {
    pub shift: u8,
    /// Chi-squared statistic; lower is better.
    pub score: T,
    pub preview: String,
}

/// Try all 26 shifts and rank them, best first. Ties go to the smaller
/// shift.
pub fn caesar_crack<T: Float>(
    ciphertext: &str,
    table: &LetterFrequencyTable<T>,
) -> Result<Vec<ShiftCandidate<T>>, AnalysisError> {
    if ciphertext.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    check_letters(ciphertext, Policy::Standard)?;
    let counts = letter_counts(ciphertext);
    let head = &ciphertext[..ciphertext.len().min(PREVIEW_LEN)];
    let mut ranking: Vec<ShiftCandidate<T>> = (0u8..26)
        .map(|shift| {
            // decrypting by `shift` moves the count of letter c+shift onto c
            let mut shifted = [0usize; 26];
            for (plain, slot) in shifted.iter_mut().enumerate() {
                *slot = counts[(plain + shift as usize) % 26];
            }
            ShiftCandidate {
                shift,
                score: chi_squared_counts(&shifted, ciphertext.len(), table),
                preview: caesar::apply(head, (26 - shift) % 26),
            }
        })
        .collect();
    ranking.sort_by(|a, b| {
        a.score
            .partial_cmp(&b.score)
            .unwrap_or(Ordering::Equal)
            .then(a.shift.cmp(&b.shift))
    });
    Ok(ranking)
}
