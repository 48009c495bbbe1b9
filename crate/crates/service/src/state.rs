use std::collections::{BTreeMap, HashMap};
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use cryptolexia_core::game::{ChallengeBank, GameState};

use crate::error::ApiError;
use crate::settings::PlayerSettings;
use crate::store::{self, Fault, SaveStage, SessionRecord, StoreDocument, StoreError, STORE_VERSION};

/// Everything the handlers read: the game state, the token table and the
/// players' settings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Snapshot {
    pub game: GameState,
    /// token -> nickname
    pub tokens: HashMap<String, String>,
    pub settings: BTreeMap<String, PlayerSettings>,
}

impl Snapshot {
    pub fn from_document(doc: &StoreDocument) -> Self {
        Snapshot {
            game: doc.game_state(),
            tokens: doc
                .sessions
                .iter()
                .map(|r| (r.token.clone(), r.session.handle.clone()))
                .collect(),
            settings: doc.settings.clone(),
        }
    }

    pub fn to_document(&self) -> StoreDocument {
        let mut sessions: Vec<SessionRecord> = self
            .tokens
            .iter()
            .filter_map(|(token, handle)| {
                self.game.session(handle).map(|s| SessionRecord {
                    token: token.clone(),
                    session: s.clone(),
                })
            })
            .collect();
        sessions.sort_by(|a, b| a.session.handle.cmp(&b.session.handle));
        StoreDocument {
            version: STORE_VERSION,
            sessions,
            settings: self.settings.clone(),
            solve_ordinal: self.game.solve_ordinal,
        }
    }

    pub fn handle_for(&self, token: &str) -> Option<&str> {
        self.tokens.get(token).map(String::as_str)
    }

    pub fn settings_for(&self, handle: &str) -> PlayerSettings {
        self.settings.get(handle).copied().unwrap_or_default()
    }
}

type FaultHook = Box<dyn FnMut(SaveStage) -> Fault + Send>;

struct Writer {
    current: Snapshot,
    fault_hook: Option<FaultHook>,
}

struct Shared {
    bank: ChallengeBank,
    store_path: Option<PathBuf>,
    writer: Mutex<Writer>,
    snapshot: RwLock<Arc<Snapshot>>,
}

/// Shared service state. Mutations go through one writer lock and are saved
/// before they become visible; reads take the latest published snapshot.
#[derive(Clone)]
pub struct AppState(Arc<Shared>);

/// Whether a mutation changed anything worth saving.
pub enum Outcome<R> {
    Changed(R),
    Unchanged(R),
}

impl AppState {
    /// Open (or start) the store at `path`.
    pub fn open(bank: ChallengeBank, path: impl AsRef<Path>) -> Result<Self, StoreError> {
        let path = path.as_ref();
        let doc = store::load(path, &bank)?;
        Ok(Self::build(bank, Some(path.to_path_buf()), Snapshot::from_document(&doc)))
    }

    /// A state that is never written to disk.
    pub fn in_memory(bank: ChallengeBank) -> Self {
        Self::build(bank, None, Snapshot::default())
    }

    fn build(bank: ChallengeBank, store_path: Option<PathBuf>, snapshot: Snapshot) -> Self {
        AppState(Arc::new(Shared {
            bank,
            store_path,
            snapshot: RwLock::new(Arc::new(snapshot.clone())),
            writer: Mutex::new(Writer {
                current: snapshot,
                fault_hook: None,
            }),
        }))
    }

    /// Route every subsequent save through `hook`, for fault injection.
    pub fn set_fault_hook(&self, hook: impl FnMut(SaveStage) -> Fault + Send + 'static) {
        self.0.writer.lock().unwrap_or_else(|e| e.into_inner()).fault_hook = Some(Box::new(hook));
    }

    pub fn bank(&self) -> &ChallengeBank {
        &self.0.bank
    }

    pub fn store_path(&self) -> Option<&Path> {
        self.0.store_path.as_deref()
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        self.0
            .snapshot
            .read()
            .unwrap_or_else(|e| e.into_inner())
            .clone()
    }

    /// Apply `f` to a copy of the current state. A changed copy is saved and
    /// only then replaces the current state; if saving fails nothing changes.
    pub fn mutate<R>(
        &self,
        f: impl FnOnce(&mut Snapshot, &ChallengeBank) -> Result<Outcome<R>, ApiError>,
    ) -> Result<R, ApiError> {
        let mut writer = self.0.writer.lock().unwrap_or_else(|e| e.into_inner());
        let mut next = writer.current.clone();
        let result = match f(&mut next, &self.0.bank)? {
            Outcome::Unchanged(r) => return Ok(r),
            Outcome::Changed(r) => r,
        };
        if let Some(path) = &self.0.store_path {
            let doc = next.to_document();
            let saved = match writer.fault_hook.as_mut() {
                Some(hook) => store::save_with(path, &doc, hook),
                None => store::save(path, &doc),
            };
            saved.map_err(|e| ApiError::internal(format!("could not save store: {e}")))?;
        }
        writer.current = next.clone();
        *self.0.snapshot.write().unwrap_or_else(|e| e.into_inner()) = Arc::new(next);
        Ok(result)
    }
}

pub fn new_token() -> String {
    format!("{:032x}", rand::random::<u128>())
}
