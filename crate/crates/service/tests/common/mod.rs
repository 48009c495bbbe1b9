#![allow(dead_code)]

use axum::body::Body;
use axum::http::{header, Method, Request, StatusCode};
use axum::Router;
use cryptolexia_core::game::ChallengeBank;
use cryptolexia_service::{router, AppState};
use http_body_util::BodyExt;
use serde_json::Value;
use tower::ServiceExt;

pub struct Client {
    pub app: Router,
    pub state: AppState,
}

pub struct Reply {
    pub status: StatusCode,
    pub content_type: Option<String>,
    pub text: String,
}

impl Reply {
    pub fn json(&self) -> Value {
        serde_json::from_str(&self.text).unwrap_or_else(|e| panic!("{e}: {}", self.text))
    }
}

impl Client {
    pub fn new(state: AppState) -> Self {
        Client {
            app: router(state.clone()),
            state,
        }
    }

    pub fn in_memory() -> Self {
        Self::new(AppState::in_memory(ChallengeBank::bundled()))
    }

    pub async fn send(&self, method: Method, uri: &str, token: Option<&str>, body: Option<&str>) -> Reply {
        let mut req = Request::builder().method(method).uri(uri);
        if let Some(t) = token {
            req = req.header(header::AUTHORIZATION, format!("Bearer {t}"));
        }
        let req = match body {
            Some(b) => req
                .header(header::CONTENT_TYPE, "application/json")
                .body(Body::from(b.to_string())),
            None => req.body(Body::empty()),
        }
        .unwrap();
        let res = self.app.clone().oneshot(req).await.unwrap();
        let status = res.status();
        let content_type = res
            .headers()
            .get(header::CONTENT_TYPE)
            .map(|v| v.to_str().unwrap().to_string());
        let bytes = res.into_body().collect().await.unwrap().to_bytes();
        Reply {
            status,
            content_type,
            text: String::from_utf8(bytes.to_vec()).unwrap(),
        }
    }

    pub async fn get(&self, uri: &str, token: Option<&str>) -> Reply {
        self.send(Method::GET, uri, token, None).await
    }

    pub async fn post(&self, uri: &str, token: Option<&str>, body: &str) -> Reply {
        self.send(Method::POST, uri, token, Some(body)).await
    }

    pub async fn put(&self, uri: &str, token: Option<&str>, body: &str) -> Reply {
        self.send(Method::PUT, uri, token, Some(body)).await
    }

    /// Create a player and return its token.
    pub async fn join(&self, handle: &str) -> String {
        let reply = self.post("/api/players", None, &format!(r#"{{"handle":"{handle}"}}"#)).await;
        assert_eq!(reply.status, StatusCode::CREATED, "{}", reply.text);
        reply.json()["session_token"].as_str().unwrap().to_string()
    }

    pub async fn answer(&self, token: &str, id: &str, attempt: &str) -> Reply {
        let body = serde_json::json!({ "challenge_id": id, "attempt": attempt }).to_string();
        self.post("/api/answers", Some(token), &body).await
    }

    /// Solve every challenge of a level with its canonical answer.
    pub async fn clear_level(&self, token: &str, level: u8) {
        let bank = self.state.bank().clone();
        for c in bank.challenges_in(level) {
            let reply = self.answer(token, &c.id, &c.answer).await;
            assert_eq!(reply.status, StatusCode::OK, "{}", reply.text);
        }
    }
}

/// Replace the token in a JSON value so golden comparisons are stable.
pub fn mask_token(mut v: Value) -> Value {
    if let Some(t) = v.get_mut("session_token") {
        assert!(cryptolexia_service::store::is_token(t.as_str().unwrap()));
        *t = Value::String("<token>".into());
    }
    v
}

/// Letters of `text`, lowercased, for answer-leak scanning.
pub fn letter_stream(text: &str) -> String {
    text.chars()
        .filter(char::is_ascii_alphabetic)
        .map(|c| c.to_ascii_lowercase())
        .collect()
}

/// Panic if any challenge answer, bare or with Playfair fillers, appears in
/// the reply's letters.
pub fn assert_no_answer(bank: &ChallengeBank, text: &str) {
    let letters = letter_stream(text);
    for c in bank.challenges() {
        assert!(!letters.contains(&c.answer), "answer of {} leaked in {text}", c.id);
        let padded = cryptolexia_core::cipher::playfair::digraphs(&cryptolexia_core::normalize(
            &c.answer,
            cryptolexia_core::Policy::Playfair,
        ))
        .stream();
        assert!(!letters.contains(&padded), "padded answer of {} leaked", c.id);
    }
}
