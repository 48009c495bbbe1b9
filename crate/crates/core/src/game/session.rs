use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::bank::{Challenge, ChallengeBank};
use super::error::GameError;
use super::level::LEVEL_COUNT;
use super::scoreboard::{scoreboard, ScoreboardEntry};

pub const MAX_HANDLE_LEN: usize = 24;

/// One anonymous player's progress.
///
/// There is deliberately no attempt counter and no timestamp here. A wrong
/// answer or a hint request leaves the serialized session unchanged.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Session {
    pub handle: String,
    /// Highest level the player may open.
    pub unlocked: u8,
    pub solved: BTreeSet<String>,
    pub total_score: u64,
    /// Ordinal of the player's most recent first solve, for tie-breaking.
    pub last_solve: Option<u64>,
}

impl Session {
    pub fn new(handle: impl Into<String>) -> Self {
        Session {
            handle: handle.into(),
            unlocked: 1,
            solved: BTreeSet::new(),
            total_score: 0,
            last_solve: None,
        }
    }

    pub fn has_solved(&self, id: &str) -> bool {
        self.solved.contains(id)
    }

    pub fn is_unlocked(&self, level: u8) -> bool {
        (1..=self.unlocked).contains(&level)
    }

    /// Check the session against a bank: every solved id exists, the score
    /// is the sum of their points, and the unlocked level is exactly what
    /// the solved set earns.
    pub fn check(&self, bank: &ChallengeBank) -> Result<(), String> {
        if !(1..=LEVEL_COUNT).contains(&self.unlocked) {
            return Err(format!("{}: unlocked level {} out of range", self.handle, self.unlocked));
        }
        let mut sum = 0u64;
        for id in &self.solved {
            let challenge = bank
                .challenge(id)
                .ok_or_else(|| format!("{}: solved unknown challenge {id:?}", self.handle))?;
            if challenge.level > self.unlocked {
                return Err(format!("{}: solved {id:?} on a locked level", self.handle));
            }
            sum += challenge.points as u64;
        }
        if sum != self.total_score {
            return Err(format!(
                "{}: total score {} but solved challenges are worth {sum}",
                self.handle, self.total_score
            ));
        }
        if self.unlocked != earned_level(bank, &self.solved) {
            return Err(format!("{}: unlocked level does not match progress", self.handle));
        }
        if self.solved.is_empty() != self.last_solve.is_none() {
            return Err(format!("{}: solve ordinal inconsistent with solved set", self.handle));
        }
        Ok(())
    }
}

/// The highest level opened by completing every earlier level.
fn earned_level(bank: &ChallengeBank, solved: &BTreeSet<String>) -> u8 {
    let mut level = 1;
    while level < LEVEL_COUNT && level_complete(bank, solved, level) {
        level += 1;
    }
    level
}

fn level_complete(bank: &ChallengeBank, solved: &BTreeSet<String>, level: u8) -> bool {
    bank.challenges_in(level).all(|c| solved.contains(&c.id))
}

/// Outcome of one submitted answer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub correct: bool,
    pub score_delta: u64,
    pub total_score: u64,
    pub newly_unlocked: Option<u8>,
}

/// Nicknames are 1–24 ASCII letters, digits or underscores.
pub fn validate_handle(handle: &str) -> Result<(), GameError> {
    let ok = (1..=MAX_HANDLE_LEN).contains(&handle.len())
        && handle.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
    if ok {
        Ok(())
    } else {
        Err(GameError::InvalidHandle)
    }
}

fn accessible<'b>(bank: &'b ChallengeBank, session: &Session, id: &str) -> Result<&'b Challenge, GameError> {
    let challenge = bank
        .challenge(id)
        .ok_or_else(|| GameError::UnknownChallenge(id.to_string()))?;
    if !session.is_unlocked(challenge.level) {
        return Err(GameError::LockedLevel(challenge.level));
    }
    Ok(challenge)
}

/// Check an attempt. A first correct solve adds the challenge's points and
/// takes the next value of `solve_ordinal`; anything else changes nothing.
pub fn submit_answer(
    bank: &ChallengeBank,
    session: &mut Session,
    solve_ordinal: &mut u64,
    challenge_id: &str,
    attempt: &str,
) -> Result<Verdict, GameError> {
    let challenge = accessible(bank, session, challenge_id)?;
    let correct = challenge.accepts(attempt);
    let mut verdict = Verdict {
        correct,
        score_delta: 0,
        total_score: session.total_score,
        newly_unlocked: None,
    };
    if !correct || session.has_solved(challenge_id) {
        return Ok(verdict);
    }

    session.solved.insert(challenge.id.clone());
    session.total_score += challenge.points as u64;
    *solve_ordinal += 1;
    session.last_solve = Some(*solve_ordinal);
    let earned = earned_level(bank, &session.solved);
    if earned > session.unlocked {
        session.unlocked = earned;
        verdict.newly_unlocked = Some(earned);
    }
    verdict.score_delta = challenge.points as u64;
    verdict.total_score = session.total_score;
    Ok(verdict)
}

/// Look up a hint. Hints are free and their use is not recorded.
pub fn get_hint<'b>(bank: &'b ChallengeBank, challenge_id: &str, hint_index: usize) -> Result<&'b str, GameError> {
    let challenge = bank
        .challenge(challenge_id)
        .ok_or_else(|| GameError::UnknownChallenge(challenge_id.to_string()))?;
    challenge
        .hints
        .get(hint_index)
        .map(String::as_str)
        .ok_or(GameError::NoSuchHint)
}

/// All sessions plus the shared solve counter.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameState {
    pub sessions: BTreeMap<String, Session>,
    pub solve_ordinal: u64,
}

impl GameState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn create_session(&mut self, handle: &str) -> Result<&Session, GameError> {
        validate_handle(handle)?;
        if self.sessions.contains_key(handle) {
            return Err(GameError::DuplicateHandle(handle.to_string()));
        }
        Ok(self
            .sessions
            .entry(handle.to_string())
            .or_insert_with(|| Session::new(handle)))
    }

    pub fn session(&self, handle: &str) -> Option<&Session> {
        self.sessions.get(handle)
    }

    pub fn submit(
        &mut self,
        bank: &ChallengeBank,
        handle: &str,
        challenge_id: &str,
        attempt: &str,
    ) -> Result<Verdict, GameError> {
        let session = self
            .sessions
            .get_mut(handle)
            .ok_or_else(|| GameError::UnknownPlayer(handle.to_string()))?;
        submit_answer(bank, session, &mut self.solve_ordinal, challenge_id, attempt)
    }

    /// A hint for a challenge on one of the player's unlocked levels.
    pub fn hint<'b>(
        &self,
        bank: &'b ChallengeBank,
        handle: &str,
        challenge_id: &str,
        hint_index: usize,
    ) -> Result<&'b str, GameError> {
        let session = self
            .session(handle)
            .ok_or_else(|| GameError::UnknownPlayer(handle.to_string()))?;
        accessible(bank, session, challenge_id)?;
        get_hint(bank, challenge_id, hint_index)
    }

    /// The challenges of a level, if the player has opened it.
    pub fn level_challenges<'b>(
        &self,
        bank: &'b ChallengeBank,
        handle: &str,
        level: u8,
    ) -> Result<Vec<&'b Challenge>, GameError> {
        let session = self
            .session(handle)
            .ok_or_else(|| GameError::UnknownPlayer(handle.to_string()))?;
        if bank.level(level).is_none() {
            return Err(GameError::UnknownLevel(level));
        }
        if !session.is_unlocked(level) {
            return Err(GameError::LockedLevel(level));
        }
        Ok(bank.challenges_in(level).collect())
    }

    pub fn scoreboard(&self, limit: usize) -> Vec<ScoreboardEntry> {
        scoreboard(self.sessions.values(), limit)
    }

    /// Check every session and the counter against a bank.
    pub fn check(&self, bank: &ChallengeBank) -> Result<(), String> {
        let mut solves = 0u64;
        for (handle, session) in &self.sessions {
            if handle != &session.handle {
                return Err(format!("session stored under {handle:?} is named {:?}", session.handle));
            }
            validate_handle(handle).map_err(|e| format!("{handle:?}: {e}"))?;
            session.check(bank)?;
            if session.last_solve.is_some_and(|o| o > self.solve_ordinal) {
                return Err(format!("{handle}: solve ordinal ahead of the counter"));
            }
            solves += session.solved.len() as u64;
        }
        if self.solve_ordinal < solves {
            return Err(format!(
                "solve counter {} is below the {solves} recorded solves",
                self.solve_ordinal
            ));
        }
        Ok(())
    }
}
