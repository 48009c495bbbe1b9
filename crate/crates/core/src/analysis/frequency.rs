use num_traits::Float;

use super::{count, lit};
use crate::error::AnalysisError;
use crate::text::{check_letters, Policy};

/// Expected relative frequency of each letter a–z in some language.
#[derive(Debug, Clone, PartialEq)]
pub struct LetterFrequencyTable<T> {
    freq: [T; 26],
}

impl<T: Float> LetterFrequencyTable<T> {
    /// Entries must be nonnegative and sum to 1 within 1e-9.
    pub fn new(freq: [T; 26]) -> Result<Self, AnalysisError> {
        if freq.iter().any(|f| !f.is_finite() || *f < T::zero()) {
            return Err(AnalysisError::FrequencyTable(
                "entries must be finite and nonnegative".into(),
            ));
        }
        let sum = freq.iter().fold(T::zero(), |acc, &f| acc + f);
        if (sum - T::one()).abs() > lit::<T>(1e-9).max(T::epsilon() * lit(32.0)) {
            return Err(AnalysisError::FrequencyTable(format!(
                "entries sum to {:?}, expected 1",
                sum.to_f64()
            )));
        }
        Ok(LetterFrequencyTable { freq })
    }

    /// Parse 26 whitespace-separated decimals in a–z order. Lines starting
    /// with `#` are comments. The values are rescaled to sum to 1, so both
    /// proportions and percentages are accepted.
    pub fn parse(source: &str) -> Result<Self, AnalysisError> {
        let mut values = Vec::with_capacity(26);
        for line in source.lines() {
            let line = line.trim();
            if line.starts_with('#') {
                continue;
            }
            for token in line.split_whitespace() {
                let v: f64 = token.parse().map_err(|_| {
                    AnalysisError::FrequencyTable(format!("not a number: {token:?}"))
                })?;
                values.push(v);
            }
        }
        if values.len() != 26 {
            return Err(AnalysisError::FrequencyTable(format!(
                "expected 26 values, found {}",
                values.len()
            )));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(AnalysisError::FrequencyTable(
                "entries must be finite and nonnegative".into(),
            ));
        }
        let sum: f64 = values.iter().sum();
        if sum <= 0.0 {
            return Err(AnalysisError::FrequencyTable("entries sum to zero".into()));
        }
        // rescale in the target type so rounding stays within its epsilon
        let sum_t: T = lit(sum);
        let mut freq = [T::zero(); 26];
        for (slot, v) in freq.iter_mut().zip(&values) {
            *slot = lit::<T>(*v) / sum_t;
        }
        Self::new(freq)
    }

    /// The bundled English table.
    pub fn english() -> Self {
        Self::parse(crate::data::ENGLISH_FREQUENCIES).expect("bundled table is valid")
    }

    pub fn freq(&self) -> &[T; 26] {
        &self.freq
    }

    pub fn get(&self, letter: char) -> Option<T> {
        letter
            .is_ascii_lowercase()
            .then(|| self.freq[(letter as u8 - b'a') as usize])
    }
}

/// Occurrences of each letter a–z.
pub fn letter_counts(letters: &str) -> [usize; 26] {
    let mut counts = [0usize; 26];
    for b in letters.bytes() {
        counts[(b - b'a') as usize] += 1;
    }
    counts
}

/// Pearson's chi-squared statistic of the letter counts against the table.
/// Lower means more like the table's language. A letter the table gives
/// zero probability contributes nothing when absent and infinity when
/// present.
pub fn chi_squared_score<T: Float>(
    letters: &str,
    table: &LetterFrequencyTable<T>,
) -> Result<T, AnalysisError> {
    if letters.is_empty() {
        return Err(AnalysisError::EmptyInput);
    }
    check_letters(letters, Policy::Standard)?;
    Ok(chi_squared_counts(&letter_counts(letters), letters.len(), table))
}

pub(crate) fn chi_squared_counts<T: Float>(
    counts: &[usize; 26],
    n: usize,
    table: &LetterFrequencyTable<T>,
) -> T {
    let n: T = count(n);
    counts
        .iter()
        .zip(table.freq.iter())
        .fold(T::zero(), |acc, (&observed, &p)| {
            let expected = p * n;
            let observed: T = count(observed);
            if expected == T::zero() {
                if observed == T::zero() {
                    acc
                } else {
                    T::infinity()
                }
            } else {
                let d = observed - expected;
                acc + d * d / expected
            }
        })
}

/// Probability that two letters drawn without replacement are equal.
pub fn index_of_coincidence<T: Float>(letters: &str) -> Result<T, AnalysisError> {
    if letters.len() < 2 {
        return Err(AnalysisError::TooShort {
            needed: 2,
            got: letters.len(),
        });
    }
    check_letters(letters, Policy::Standard)?;
    Ok(ioc_counts(&letter_counts(letters), letters.len()))
}

pub(crate) fn ioc_counts<T: Float>(counts: &[usize; 26], n: usize) -> T {
    let pairs: usize = counts.iter().map(|&f| f * f.saturating_sub(1)).sum();
    count::<T>(pairs) / count::<T>(n * (n - 1))
}
