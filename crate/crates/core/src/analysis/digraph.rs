use std::collections::BTreeMap;

use crate::error::AnalysisError;
use crate::text::{check_letters, Policy};

/// Counts of non-overlapping digraphs in a Playfair ciphertext.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DigraphHistogram {
    counts: BTreeMap<String, u64>,
    total: u64,
}

impl DigraphHistogram {
    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn get(&self, digraph: &str) -> u64 {
        self.counts.get(digraph).copied().unwrap_or(0)
    }

    pub fn distinct(&self) -> usize {
        self.counts.len()
    }

    /// The `k` most frequent digraphs, ties broken alphabetically.
    pub fn top(&self, k: usize) -> Vec<(&str, u64)> {
        let mut all: Vec<(&str, u64)> = self.counts.iter().map(|(d, &n)| (d.as_str(), n)).collect();
        all.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(b.0)));
        all.truncate(k);
        all
    }
}

pub fn digraph_frequency(ciphertext: &str) -> Result<DigraphHistogram, AnalysisError> {
    check_letters(ciphertext, Policy::Playfair)?;
    if !ciphertext.len().is_multiple_of(2) {
        return Err(AnalysisError::OddLength(ciphertext.len()));
    }
    let mut hist = DigraphHistogram::default();
    for pair in ciphertext.as_bytes().chunks_exact(2) {
        let key = String::from_utf8_lossy(pair).into_owned();
        *hist.counts.entry(key).or_insert(0) += 1;
        hist.total += 1;
    }
    Ok(hist)
}
