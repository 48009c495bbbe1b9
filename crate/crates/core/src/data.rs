//! Files bundled with the crate.

/// English letter frequencies, one decimal per letter a–z.
pub const ENGLISH_FREQUENCIES: &str = include_str!("../data/english_frequencies.txt");

/// A passage of plain English prose used to exercise the attacks.
pub const ENGLISH_SAMPLE: &str = include_str!("../data/english_sample.txt");

/// The default challenge bank: three story-framed challenges per level.
pub const CHALLENGE_BANK: &str = include_str!("../data/challenges.toml");

/// [`ENGLISH_SAMPLE`] reduced to its letter stream.
pub fn english_sample_letters() -> String {
    crate::text::normalize(ENGLISH_SAMPLE, crate::text::Policy::Standard)
        .letters()
        .to_string()
}
