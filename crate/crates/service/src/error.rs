use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use cryptolexia_core::game::GameError;
use serde_json::json;

/// An error response: `{"error": {"code": ..., "message": ...}}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }

    pub fn unauthorized() -> Self {
        Self::new(
            StatusCode::UNAUTHORIZED,
            "unauthorized",
            "missing or unknown session token",
        )
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", message)
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_request", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl From<GameError> for ApiError {
    fn from(err: GameError) -> Self {
        let message = err.to_string();
        match err {
            GameError::UnknownChallenge(_) | GameError::UnknownLevel(_) | GameError::NoSuchHint => {
                Self::not_found(message)
            }
            GameError::LockedLevel(_) => Self::new(StatusCode::FORBIDDEN, "locked", message),
            GameError::UnknownPlayer(_) => Self::unauthorized(),
            GameError::DuplicateHandle(_) => Self::new(StatusCode::CONFLICT, "handle_taken", message),
            GameError::InvalidHandle => Self::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_handle", message),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}
