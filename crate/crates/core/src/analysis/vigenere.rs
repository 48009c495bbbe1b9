use num_traits::Float;

use super::frequency::{ioc_counts, letter_counts, LetterFrequencyTable};
use super::{caesar_crack, lit};
use crate::cipher::VigenereKey;
use crate::error::AnalysisError;
use crate::text::{check_letters, Policy};

/// Index of coincidence of English prose.
pub const ENGLISH_IOC: f64 = 0.0667;
/// Candidates whose distance to [`ENGLISH_IOC`] is within this much of the
/// best are treated as tied, and the shortest of them wins.
pub const NEAR_TIE_IOC: f64 = 0.005;

/// Longest key length the ranking considers.
pub const MAX_KEY_LENGTH: usize = 20;

#[derive(Debug, Clone, PartialEq)]
pub struct KeyLengthCandidate<T> {
    pub length: usize,
    /// Mean index of coincidence over the `length` columns.
    pub mean_ioc: T,
}

fn columns(ciphertext: &str, key_len: usize) -> Vec<String> {
    let mut cols = vec![String::with_capacity(ciphertext.len() / key_len + 1); key_len];
    for (i, ch) in ciphertext.chars().enumerate() {
        cols[i % key_len].push(ch);
    }
    cols
}

/// Rank key lengths `1..=max_len` by how close their mean column IoC is to
/// English. Among near-ties the smaller length is ranked first, since every
/// multiple of the true length scores about as well as the length itself.
pub fn vigenere_key_length<T: Float>(
    ciphertext: &str,
    max_len: usize,
) -> Result<Vec<KeyLengthCandidate<T>>, AnalysisError> {
    if !(1..=MAX_KEY_LENGTH).contains(&max_len) {
        return Err(AnalysisError::MaxKeyLength(max_len));
    }
    if ciphertext.len() < 2 * max_len {
        return Err(AnalysisError::TooShort {
            needed: 2 * max_len,
            got: ciphertext.len(),
        });
    }
    check_letters(ciphertext, Policy::Standard)?;

    let mut remaining: Vec<(KeyLengthCandidate<T>, T)> = (1..=max_len)
        .map(|length| {
            let cols = columns(ciphertext, length);
            let sum = cols.iter().fold(T::zero(), |acc, col| {
                acc + ioc_counts::<T>(&letter_counts(col), col.len())
            });
            let mean_ioc = sum / T::from(length).unwrap();
            let distance = (mean_ioc - lit(ENGLISH_IOC)).abs();
            (KeyLengthCandidate { length, mean_ioc }, distance)
        })
        .collect();

    // repeatedly take the shortest length within the near-tie band of the
    // best remaining distance
    let band: T = lit(NEAR_TIE_IOC);
    let mut ranking = Vec::with_capacity(max_len);
    while !remaining.is_empty() {
        let best = remaining
            .iter()
            .map(|(_, d)| *d)
            .fold(T::infinity(), T::min);
        let pick = remaining
            .iter()
            .position(|(_, d)| *d <= best + band)
            .expect("best distance is within its own band");
        ranking.push(remaining.remove(pick).0);
    }
    Ok(ranking)
}

/// Recover a key of known length: each column is a Caesar cipher, cracked by
/// chi-squared against the table.
pub fn vigenere_recover_key<T: Float>(
    ciphertext: &str,
    key_len: usize,
    table: &LetterFrequencyTable<T>,
) -> Result<VigenereKey, AnalysisError> {
    if key_len == 0 {
        return Err(AnalysisError::ZeroKeyLength);
    }
    check_letters(ciphertext, Policy::Standard)?;
    let mut key = String::with_capacity(key_len);
    for (i, col) in columns(ciphertext, key_len).iter().enumerate() {
        if col.is_empty() {
            return Err(AnalysisError::EmptyColumn(i));
        }
        let best = &caesar_crack(col, table)?[0];
        key.push((b'a' + best.shift) as char);
    }
    Ok(VigenereKey::new(&key)?)
}
