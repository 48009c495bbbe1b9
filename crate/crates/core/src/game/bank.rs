//! The challenge bank: a TOML document of levels and their challenges.
//!
//! ```toml
//! [[levels]]
//! number = 1
//! cipher = "caesar"
//! title = "The Letter"
//! story = "..."
//!
//! [[levels.challenges]]
//! id = "letter-1"
//! prompt = "..."
//! answer = "meet at the old palace"
//! key = "3"
//! ciphertext = "phhw dw wkh rog sdodfh"
//! hints = ["..."]
//! # optional:
//! disclosure = "none"        # none | full_key | key_hint
//! key_hint = "..."           # required when disclosure = "key_hint"
//! points = 50                # checked against the scoring formula
//! ```
//!
//! Loading re-encrypts every answer and rejects the bank if any stored
//! ciphertext differs.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::error::{BankError, BankProblem};
use super::level::{Level, LEVEL_COUNT};
use crate::cipher::{caesar, playfair, vigenere, CaesarKey, CipherKind, PlayfairMatrix, VigenereKey};
use crate::text::{normalize, Policy};

/// Points for the challenge at `index` (0-based) within `level`.
pub fn points_for(level: u8, index: usize) -> u32 {
    50 * level as u32 + 10 * index as u32
}

/// The secret a challenge was encrypted with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChallengeKey {
    Caesar(CaesarKey),
    Vigenere(VigenereKey),
    Playfair(VigenereKey),
}

impl ChallengeKey {
    pub fn parse(cipher: CipherKind, raw: &str) -> Result<Self, crate::CipherError> {
        Ok(match cipher {
            CipherKind::Caesar => ChallengeKey::Caesar(raw.parse()?),
            CipherKind::Vigenere => ChallengeKey::Vigenere(raw.parse()?),
            CipherKind::Playfair => ChallengeKey::Playfair(raw.parse()?),
        })
    }

    pub fn cipher(&self) -> CipherKind {
        match self {
            ChallengeKey::Caesar(_) => CipherKind::Caesar,
            ChallengeKey::Vigenere(_) => CipherKind::Vigenere,
            ChallengeKey::Playfair(_) => CipherKind::Playfair,
        }
    }

    /// The key as a player would type it.
    pub fn display(&self) -> String {
        match self {
            ChallengeKey::Caesar(k) => k.shift().to_string(),
            ChallengeKey::Vigenere(k) | ChallengeKey::Playfair(k) => k.to_string(),
        }
    }

    /// Encrypt plaintext and render it with the plaintext's word spacing.
    pub fn encrypt_spaced(&self, plaintext: &str) -> String {
        match self {
            ChallengeKey::Caesar(k) => {
                let text = normalize(plaintext, Policy::Standard);
                crate::text::regroup(&caesar::encrypt(&text, *k), text.layout())
                    .expect("caesar preserves length")
            }
            ChallengeKey::Vigenere(k) => {
                let text = normalize(plaintext, Policy::Standard);
                crate::text::regroup(&vigenere::encrypt(&text, k), text.layout())
                    .expect("vigenere preserves length")
            }
            ChallengeKey::Playfair(k) => {
                let text = normalize(plaintext, Policy::Playfair);
                playfair::encrypt(&text, &PlayfairMatrix::new(k)).spaced()
            }
        }
    }

    /// Decrypt a (possibly spaced) ciphertext to its bare letters. Playfair
    /// output keeps its filler letters.
    pub fn decrypt(&self, ciphertext: &str) -> Result<String, crate::CipherError> {
        match self {
            ChallengeKey::Caesar(k) => {
                caesar::decrypt(normalize(ciphertext, Policy::Standard).letters(), *k)
            }
            ChallengeKey::Vigenere(k) => {
                vigenere::decrypt(normalize(ciphertext, Policy::Standard).letters(), k)
            }
            ChallengeKey::Playfair(k) => playfair::decrypt(
                normalize(ciphertext, Policy::Playfair).letters(),
                &PlayfairMatrix::new(k),
            ),
        }
    }
}

/// What the player is told about the key.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "material", rename_all = "snake_case")]
pub enum KeyDisclosure {
    FullKey(String),
    KeyHint(String),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Challenge {
    pub id: String,
    pub level: u8,
    pub index: usize,
    pub prompt: String,
    /// Spaced ciphertext, as shown to the player.
    pub ciphertext: String,
    /// Canonical answer letters (lowercase a–z, no spaces).
    pub answer: String,
    pub key: ChallengeKey,
    pub key_disclosure: KeyDisclosure,
    pub hints: Vec<String>,
    pub points: u32,
}

impl Challenge {
    pub fn cipher(&self) -> CipherKind {
        self.key.cipher()
    }

    /// Whether `attempt` solves this challenge. Case, spacing and
    /// punctuation are ignored; Playfair answers are accepted with or
    /// without their filler letters.
    pub fn accepts(&self, attempt: &str) -> bool {
        match self.cipher() {
            CipherKind::Caesar | CipherKind::Vigenere => {
                let attempt = normalize(attempt, Policy::Standard);
                !attempt.is_empty() && attempt.letters() == self.answer
            }
            CipherKind::Playfair => {
                let attempt = normalize(attempt, Policy::Playfair);
                if attempt.is_empty() {
                    return false;
                }
                let bare = normalize(&self.answer, Policy::Playfair);
                let padded = playfair::digraphs(&bare).stream();
                attempt.letters() == bare.letters() || attempt.letters() == padded
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBank {
    #[serde(default)]
    levels: Vec<RawLevel>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLevel {
    number: u8,
    cipher: CipherKind,
    title: String,
    story: String,
    #[serde(default)]
    challenges: Vec<RawChallenge>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
enum DisclosureKind {
    None,
    FullKey,
    KeyHint,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChallenge {
    id: String,
    prompt: String,
    answer: String,
    key: toml::Value,
    ciphertext: String,
    #[serde(default)]
    hints: Vec<String>,
    disclosure: Option<DisclosureKind>,
    key_hint: Option<String>,
    points: Option<u32>,
}

/// One line of [`ChallengeBank::audit`]: a challenge id or `level N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditLine {
    pub subject: String,
    pub problems: Vec<String>,
}

impl AuditLine {
    pub fn ok(&self) -> bool {
        self.problems.is_empty()
    }
}

/// A validated set of three levels and their challenges.
#[derive(Debug, Clone)]
pub struct ChallengeBank {
    levels: Vec<Level>,
    challenges: Vec<Challenge>,
    by_id: HashMap<String, usize>,
}

impl ChallengeBank {
    /// The bank shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(crate::data::CHALLENGE_BANK).expect("bundled challenge bank is valid")
    }

    pub fn parse(source: &str) -> Result<Self, BankError> {
        let raw: RawBank = toml::from_str(source).map_err(|e| BankError::Malformed(e.to_string()))?;
        Self::from_raw(raw)
    }

    /// Validate `source` and report on every challenge in file order,
    /// followed by any levels with problems of their own. Fails only when
    /// the document cannot be read as a bank at all.
    pub fn audit(source: &str) -> Result<Vec<AuditLine>, BankError> {
        let raw: RawBank = toml::from_str(source).map_err(|e| BankError::Malformed(e.to_string()))?;
        let mut lines: Vec<AuditLine> = Vec::new();
        for c in raw.levels.iter().flat_map(|l| &l.challenges) {
            if !lines.iter().any(|l| l.subject == c.id) {
                lines.push(AuditLine {
                    subject: c.id.clone(),
                    problems: Vec::new(),
                });
            }
        }
        let problems = match Self::from_raw(raw) {
            Ok(_) => Vec::new(),
            Err(BankError::Invalid(problems)) => problems,
            Err(e) => return Err(e),
        };
        for p in problems {
            match lines.iter_mut().find(|l| l.subject == p.subject) {
                Some(line) => line.problems.push(p.reason),
                None => lines.push(AuditLine {
                    subject: p.subject,
                    problems: vec![p.reason],
                }),
            }
        }
        Ok(lines)
    }

    fn from_raw(raw: RawBank) -> Result<Self, BankError> {
        if raw.levels.iter().all(|l| l.challenges.is_empty()) {
            return Err(BankError::NoChallenges);
        }
        let mut problems = Vec::new();
        let mut levels = Vec::new();
        let mut challenges = Vec::new();
        let mut seen_ids = HashSet::new();
        let mut seen_levels = HashSet::new();

        for raw_level in raw.levels {
            let subject = format!("level {}", raw_level.number);
            let mut problem = |subject: &str, reason: String| {
                problems.push(BankProblem {
                    subject: subject.to_string(),
                    reason,
                })
            };
            match Level::cipher_for(raw_level.number) {
                None => {
                    problem(&subject, "level number must be 1, 2 or 3".into());
                    continue;
                }
                Some(cipher) if cipher != raw_level.cipher => {
                    problem(
                        &subject,
                        format!("level {} must use {cipher}, not {}", raw_level.number, raw_level.cipher),
                    );
                    for c in &raw_level.challenges {
                        problem(&c.id, format!("belongs to {subject}, which has the wrong cipher"));
                    }
                    continue;
                }
                Some(_) => {}
            }
            if !seen_levels.insert(raw_level.number) {
                problem(&subject, "level defined twice".into());
                continue;
            }
            if raw_level.challenges.is_empty() {
                problem(&subject, "level has no challenges".into());
            }

            for (index, rc) in raw_level.challenges.iter().enumerate() {
                if !seen_ids.insert(rc.id.clone()) {
                    problem(&rc.id, "duplicate id".into());
                    continue;
                }
                match build_challenge(raw_level.number, raw_level.cipher, index, rc) {
                    Ok(c) => challenges.push(c),
                    Err(reason) => problem(&rc.id, reason),
                }
            }
            levels.push(Level {
                number: raw_level.number,
                cipher: raw_level.cipher,
                title: raw_level.title,
                story_panel: raw_level.story,
            });
        }
        for n in 1..=LEVEL_COUNT {
            if !seen_levels.contains(&n) {
                problems.push(BankProblem {
                    subject: format!("level {n}"),
                    reason: "level is missing".into(),
                });
            }
        }
        if !problems.is_empty() {
            return Err(BankError::Invalid(problems));
        }

        levels.sort_by_key(|l| l.number);
        challenges.sort_by_key(|c| (c.level, c.index));
        let by_id = challenges
            .iter()
            .enumerate()
            .map(|(i, c)| (c.id.clone(), i))
            .collect();
        Ok(ChallengeBank {
            levels,
            challenges,
            by_id,
        })
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn level(&self, number: u8) -> Option<&Level> {
        self.levels.iter().find(|l| l.number == number)
    }

    pub fn challenges(&self) -> &[Challenge] {
        &self.challenges
    }

    pub fn challenges_in(&self, level: u8) -> impl Iterator<Item = &Challenge> {
        self.challenges.iter().filter(move |c| c.level == level)
    }

    pub fn challenge(&self, id: &str) -> Option<&Challenge> {
        self.by_id.get(id).map(|&i| &self.challenges[i])
    }

    pub fn len(&self) -> usize {
        self.challenges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.challenges.is_empty()
    }
}

fn build_challenge(
    level: u8,
    cipher: CipherKind,
    index: usize,
    rc: &RawChallenge,
) -> Result<Challenge, String> {
    let raw_key = match &rc.key {
        toml::Value::String(s) => s.clone(),
        toml::Value::Integer(i) => i.to_string(),
        other => return Err(format!("key must be a string or integer, got {}", other.type_str())),
    };
    let key = ChallengeKey::parse(cipher, &raw_key).map_err(|e| format!("invalid key: {e}"))?;

    if rc.hints.is_empty() {
        return Err("at least one hint is required".into());
    }
    let answer = normalize(&rc.answer, Policy::Standard);
    if answer.is_empty() {
        return Err("answer has no letters".into());
    }

    let expected = key.encrypt_spaced(&rc.answer);
    let policy = if cipher == CipherKind::Playfair {
        Policy::Playfair
    } else {
        Policy::Standard
    };
    let stored = normalize(&rc.ciphertext, policy);
    if stored.spaced() != expected {
        return Err(format!(
            "ciphertext {:?} does not match the encrypted answer {expected:?}",
            rc.ciphertext
        ));
    }

    let points = points_for(level, index);
    if let Some(p) = rc.points {
        if p != points {
            return Err(format!("points must be {points} for position {index} of level {level}, got {p}"));
        }
    }

    // Caesar keys are left for the player to find; the key word is shown for
    // the other ciphers unless the bank says otherwise.
    let kind = rc.disclosure.as_ref().unwrap_or(match cipher {
        CipherKind::Caesar => &DisclosureKind::None,
        _ => &DisclosureKind::FullKey,
    });
    let key_disclosure = match kind {
        DisclosureKind::None => KeyDisclosure::None,
        DisclosureKind::FullKey => KeyDisclosure::FullKey(key.display()),
        DisclosureKind::KeyHint => match &rc.key_hint {
            Some(h) => KeyDisclosure::KeyHint(h.clone()),
            None => return Err("disclosure \"key_hint\" needs a key_hint".into()),
        },
    };

    Ok(Challenge {
        id: rc.id.clone(),
        level,
        index,
        prompt: rc.prompt.clone(),
        ciphertext: stored.spaced(),
        answer: answer.letters().to_string(),
        key,
        key_disclosure,
        hints: rc.hints.clone(),
        points,
    })
}
