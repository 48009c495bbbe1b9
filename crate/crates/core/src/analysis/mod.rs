//! Attacks that demonstrate each cipher's weakness.
//!
//! * Caesar: only 26 keys exist, so every shift is tried and ranked by how
//!   English-like the result is ([`caesar_crack`]).
//! * Vigenère: the key length is found from the index of coincidence of the
//!   ciphertext columns, and each column then falls to the same frequency
//!   test as a Caesar shift ([`vigenere_key_length`], [`vigenere_recover_key`]).
//! * Playfair: digraph counts survive encryption, so a histogram of cipher
//!   digraphs is the starting point of any frequency attack
//!   ([`digraph_frequency`]).
//!
//! The statistics are generic over the float type; the crate root has
//! `f64` aliases for everyday use.

mod caesar;
mod digraph;
mod frequency;
mod vigenere;

pub use caesar::{caesar_crack, ShiftCandidate, PREVIEW_LEN};
pub use digraph::{digraph_frequency, DigraphHistogram};
pub use frequency::{chi_squared_score, index_of_coincidence, letter_counts, LetterFrequencyTable};
pub use vigenere::{
    vigenere_key_length, vigenere_recover_key, KeyLengthCandidate, ENGLISH_IOC, MAX_KEY_LENGTH,
    NEAR_TIE_IOC,
};

use num_traits::Float;

/// Lift an `f64` constant into the working scalar type.
#[inline]
pub(crate) fn lit<T: Float>(x: f64) -> T {
    T::from(x).expect("float constant representable in scalar type")
}

#[inline]
pub(crate) fn count<T: Float>(n: usize) -> T {
    T::from(n).expect("count representable in scalar type")
}
