use serde::{Deserialize, Serialize};

use super::session::Session;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreboardEntry {
    pub rank: u32,
    pub handle: String,
    pub total_score: u64,
}

/// Top `limit` players by score. Equal scores are ordered by who reached
/// theirs first (smaller solve ordinal), then by nickname. Ranks run 1, 2, 3
/// with no gaps, including across ties.
pub fn scoreboard<'a>(sessions: impl IntoIterator<Item = &'a Session>, limit: usize) -> Vec<ScoreboardEntry> {
    let mut all: Vec<&Session> = sessions.into_iter().collect();
    all.sort_by(|a, b| {
        b.total_score
            .cmp(&a.total_score)
            .then_with(|| a.last_solve.unwrap_or(u64::MAX).cmp(&b.last_solve.unwrap_or(u64::MAX)))
            .then_with(|| a.handle.cmp(&b.handle))
    });
    all.into_iter()
        .take(limit)
        .enumerate()
        .map(|(i, s)| ScoreboardEntry {
            rank: i as u32 + 1,
            handle: s.handle.clone(),
            total_score: s.total_score,
        })
        .collect()
}
