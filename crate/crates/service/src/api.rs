//! Routes under `/api`. Request and response bodies are JSON with
//! lower_snake_case fields; unknown request fields are rejected.

use axum::extract::rejection::JsonRejection;
use axum::extract::{FromRequest, FromRequestParts, Path, Query, Request, State};
use axum::http::request::Parts;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use cryptolexia_core::game::{Challenge, KeyDisclosure, Session, Verdict, LEVEL_COUNT};
use cryptolexia_core::CipherKind;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::ApiError;
use crate::settings::PlayerSettings;
use crate::state::{new_token, AppState, Outcome};

pub const DEFAULT_SCOREBOARD_LIMIT: usize = 10;
pub const MAX_SCOREBOARD_LIMIT: usize = 1000;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/api/players", post(create_player))
        .route("/api/levels", get(list_levels))
        .route("/api/levels/{n}/challenges", get(level_challenges))
        .route("/api/answers", post(submit_answer))
        .route("/api/challenges/{id}/hints/{k}", get(hint))
        .route("/api/scoreboard", get(scoreboard))
        .route("/api/settings", get(get_settings).put(put_settings))
        .fallback(|| async { ApiError::not_found("no such endpoint") })
        .method_not_allowed_fallback(|| async {
            ApiError::new(StatusCode::METHOD_NOT_ALLOWED, "method_not_allowed", "method not allowed")
        })
        .with_state(state)
}

/// JSON body extractor that reports rejections in the API error format.
pub struct ApiJson<T>(pub T);

impl<T, S> FromRequest<S> for ApiJson<T>
where
    T: DeserializeOwned,
    S: Send + Sync,
{
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        match Json::<T>::from_request(req, state).await {
            Ok(Json(v)) => Ok(ApiJson(v)),
            Err(JsonRejection::JsonDataError(e)) => Err(ApiError::invalid(e.body_text())),
            Err(JsonRejection::JsonSyntaxError(e)) => Err(ApiError::new(
                StatusCode::BAD_REQUEST,
                "malformed_json",
                e.body_text(),
            )),
            Err(JsonRejection::MissingJsonContentType(e)) => Err(ApiError::new(
                StatusCode::UNSUPPORTED_MEDIA_TYPE,
                "unsupported_media_type",
                e.body_text(),
            )),
            Err(e) => Err(ApiError::new(StatusCode::BAD_REQUEST, "bad_request", e.body_text())),
        }
    }
}

/// The caller's nickname, from `Authorization: Bearer <token>`.
pub struct Player(pub String);

impl FromRequestParts<AppState> for Player {
    type Rejection = ApiError;

    async fn from_request_parts(parts: &mut Parts, state: &AppState) -> Result<Self, Self::Rejection> {
        let token = parts
            .headers
            .get(header::AUTHORIZATION)
            .and_then(|v| v.to_str().ok())
            .and_then(|v| v.strip_prefix("Bearer "))
            .map(str::trim)
            .ok_or_else(ApiError::unauthorized)?;
        state
            .snapshot()
            .handle_for(token)
            .map(|h| Player(h.to_string()))
            .ok_or_else(ApiError::unauthorized)
    }
}

#[derive(Debug, Serialize)]
pub struct SessionView {
    pub handle: String,
    pub unlocked: u8,
    pub solved: Vec<String>,
    pub total_score: u64,
}

impl From<&Session> for SessionView {
    fn from(s: &Session) -> Self {
        SessionView {
            handle: s.handle.clone(),
            unlocked: s.unlocked,
            solved: s.solved.iter().cloned().collect(),
            total_score: s.total_score,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewPlayer {
    pub handle: String,
}

#[derive(Debug, Serialize)]
pub struct PlayerCreated {
    pub session_token: String,
    pub session: SessionView,
}

async fn create_player(
    State(state): State<AppState>,
    ApiJson(body): ApiJson<NewPlayer>,
) -> Result<Response, ApiError> {
    let created = blocking(state, move |state| {
        state.mutate(|snap, _| {
            let session = SessionView::from(snap.game.create_session(&body.handle)?);
            let mut token = new_token();
            while snap.tokens.contains_key(&token) {
                token = new_token();
            }
            snap.tokens.insert(token.clone(), body.handle.clone());
            Ok(Outcome::Changed(PlayerCreated {
                session_token: token,
                session,
            }))
        })
    })
    .await?;
    Ok((StatusCode::CREATED, Json(created)).into_response())
}

#[derive(Debug, Serialize)]
pub struct LevelView {
    pub number: u8,
    pub cipher: CipherKind,
    pub title: String,
    /// Only sent once the level is open.
    pub story_panel: Option<String>,
    pub locked: bool,
    pub challenge_count: usize,
    pub solved_count: usize,
}

#[derive(Debug, Serialize)]
pub struct LevelList {
    pub levels: Vec<LevelView>,
}

async fn list_levels(State(state): State<AppState>, Player(handle): Player) -> Result<Json<LevelList>, ApiError> {
    let snap = state.snapshot();
    let session = snap.game.session(&handle).ok_or_else(ApiError::unauthorized)?;
    let bank = state.bank();
    let levels = bank
        .levels()
        .iter()
        .map(|l| {
            let locked = !session.is_unlocked(l.number);
            LevelView {
                number: l.number,
                cipher: l.cipher,
                title: l.title.clone(),
                story_panel: (!locked).then(|| l.story_panel.clone()),
                locked,
                challenge_count: bank.challenges_in(l.number).count(),
                solved_count: bank
                    .challenges_in(l.number)
                    .filter(|c| session.has_solved(&c.id))
                    .count(),
            }
        })
        .collect();
    Ok(Json(LevelList { levels }))
}

/// A challenge as the player sees it. There is no answer field.
#[derive(Debug, Serialize)]
pub struct ChallengeView {
    pub id: String,
    pub index: usize,
    pub prompt: String,
    pub ciphertext: String,
    pub key_disclosure: KeyDisclosure,
    pub hint_count: usize,
    pub points: u32,
    pub solved: bool,
}

impl ChallengeView {
    pub fn new(c: &Challenge, solved: bool) -> Self {
        ChallengeView {
            id: c.id.clone(),
            index: c.index,
            prompt: c.prompt.clone(),
            ciphertext: c.ciphertext.clone(),
            key_disclosure: c.key_disclosure.clone(),
            hint_count: c.hints.len(),
            points: c.points,
            solved,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ChallengeList {
    pub level: u8,
    pub cipher: CipherKind,
    pub challenges: Vec<ChallengeView>,
}

async fn level_challenges(
    State(state): State<AppState>,
    Player(handle): Player,
    Path(n): Path<String>,
) -> Result<Json<ChallengeList>, ApiError> {
    let level: u8 = n
        .parse()
        .ok()
        .filter(|n| (1..=LEVEL_COUNT).contains(n))
        .ok_or_else(|| ApiError::not_found(format!("no such level {n:?}")))?;
    let snap = state.snapshot();
    let bank = state.bank();
    let challenges = snap.game.level_challenges(bank, &handle, level)?;
    let session = snap.game.session(&handle).ok_or_else(ApiError::unauthorized)?;
    Ok(Json(ChallengeList {
        level,
        cipher: bank.level(level).map(|l| l.cipher).unwrap_or(CipherKind::Caesar),
        challenges: challenges
            .into_iter()
            .map(|c| ChallengeView::new(c, session.has_solved(&c.id)))
            .collect(),
    }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerRequest {
    pub challenge_id: String,
    pub attempt: String,
}

async fn submit_answer(
    State(state): State<AppState>,
    Player(handle): Player,
    ApiJson(body): ApiJson<AnswerRequest>,
) -> Result<Json<Verdict>, ApiError> {
    let verdict = blocking(state, move |state| {
        state.mutate(|snap, bank| {
            let verdict = snap.game.submit(bank, &handle, &body.challenge_id, &body.attempt)?;
            Ok(if verdict.score_delta > 0 {
                Outcome::Changed(verdict)
            } else {
                Outcome::Unchanged(verdict)
            })
        })
    })
    .await?;
    Ok(Json(verdict))
}

#[derive(Debug, Serialize)]
pub struct HintView {
    pub text: String,
}

async fn hint(
    State(state): State<AppState>,
    Player(handle): Player,
    Path((id, k)): Path<(String, String)>,
) -> Result<Json<HintView>, ApiError> {
    let index: usize = k.parse().map_err(|_| ApiError::not_found("no such hint"))?;
    let snap = state.snapshot();
    let text = snap.game.hint(state.bank(), &handle, &id, index)?;
    Ok(Json(HintView { text: text.to_string() }))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScoreboardQuery {
    pub limit: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct ScoreboardView {
    pub entries: Vec<cryptolexia_core::game::ScoreboardEntry>,
}

async fn scoreboard(
    State(state): State<AppState>,
    query: Result<Query<ScoreboardQuery>, axum::extract::rejection::QueryRejection>,
) -> Result<Json<ScoreboardView>, ApiError> {
    let Query(query) = query.map_err(|e| ApiError::invalid(e.body_text()))?;
    let limit = match query.limit {
        None => DEFAULT_SCOREBOARD_LIMIT,
        Some(raw) => raw
            .parse::<usize>()
            .ok()
            .filter(|l| (1..=MAX_SCOREBOARD_LIMIT).contains(l))
            .ok_or_else(|| ApiError::invalid(format!("limit must be between 1 and {MAX_SCOREBOARD_LIMIT}")))?,
    };
    Ok(Json(ScoreboardView {
        entries: state.snapshot().game.scoreboard(limit),
    }))
}

async fn get_settings(State(state): State<AppState>, Player(handle): Player) -> Json<PlayerSettings> {
    Json(state.snapshot().settings_for(&handle))
}

async fn put_settings(
    State(state): State<AppState>,
    Player(handle): Player,
    ApiJson(settings): ApiJson<PlayerSettings>,
) -> Result<Json<PlayerSettings>, ApiError> {
    let saved = blocking(state, move |state| {
        state.mutate(|snap, _| {
            if snap.settings_for(&handle) == settings && snap.settings.contains_key(&handle) {
                return Ok(Outcome::Unchanged(settings));
            }
            snap.settings.insert(handle.clone(), settings);
            Ok(Outcome::Changed(settings))
        })
    })
    .await?;
    Ok(Json(saved))
}

/// Run a store mutation off the async workers; saving touches the disk.
async fn blocking<R: Send + 'static>(
    state: AppState,
    f: impl FnOnce(&AppState) -> Result<R, ApiError> + Send + 'static,
) -> Result<R, ApiError> {
    tokio::task::spawn_blocking(move || f(&state))
        .await
        .map_err(|e| ApiError::internal(format!("worker failed: {e}")))?
}
