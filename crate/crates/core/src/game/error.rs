use thiserror::Error;

/// One thing wrong with a challenge bank. `subject` is a challenge id, or
/// `level N` for problems with a level as a whole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BankProblem {
    pub subject: String,
    pub reason: String,
}

impl std::fmt::Display for BankProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.subject, self.reason)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BankError {
    #[error("malformed challenge bank: {0}")]
    Malformed(String),
    #[error("no challenges")]
    NoChallenges,
    #[error("invalid challenges: {}", ids(.0))]
    Invalid(Vec<BankProblem>),
}

fn ids(problems: &[BankProblem]) -> String {
    problems
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

impl BankError {
    /// Subjects named by an [`BankError::Invalid`] error, deduplicated.
    pub fn offending(&self) -> Vec<&str> {
        let mut out: Vec<&str> = match self {
            BankError::Invalid(problems) => problems.iter().map(|p| p.subject.as_str()).collect(),
            _ => Vec::new(),
        };
        out.dedup();
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("unknown challenge {0:?}")]
    UnknownChallenge(String),
    #[error("level {0} is locked")]
    LockedLevel(u8),
    #[error("no such level {0}")]
    UnknownLevel(u8),
    #[error("no such hint")]
    NoSuchHint,
    #[error("unknown player {0:?}")]
    UnknownPlayer(String),
    #[error("nickname {0:?} is already taken")]
    DuplicateHandle(String),
    #[error("nickname must be 1-24 letters, digits or underscores")]
    InvalidHandle,
}
