//! Game rules: three levels of increasing difficulty, a bank of
//! story-framed challenges, per-question points that grow with difficulty,
//! free hints, unlimited attempts, and a peer scoreboard.
//!
//! Sessions never record how many attempts a player made or how long they
//! took. The only ordering information kept is a solve ordinal used to
//! break scoreboard ties.

mod bank;
mod error;
mod level;
mod scoreboard;
mod session;

pub use bank::{points_for, AuditLine, Challenge, ChallengeBank, ChallengeKey, KeyDisclosure};
pub use error::{BankError, BankProblem, GameError};
pub use level::{Level, LEVEL_COUNT};
pub use scoreboard::{scoreboard, ScoreboardEntry};
pub use session::{get_hint, submit_answer, validate_handle, GameState, Session, Verdict, MAX_HANDLE_LEN};
