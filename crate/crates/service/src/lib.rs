//! HTTP service for the CryptoLexia game.
//!
//! The service is a thin layer over [`cryptolexia_core::game`]: it maps
//! requests onto engine calls, keeps the state in a JSON file that is
//! replaced atomically after every change, and never sends a challenge
//! answer to a client.
//!
//! | Method | Path | |
//! |---|---|---|
//! | POST | `/api/players` | create a nickname, returns a session token |
//! | GET | `/api/levels` | the three levels with lock state |
//! | GET | `/api/levels/{n}/challenges` | challenges of an open level |
//! | POST | `/api/answers` | submit an attempt |
//! | GET | `/api/challenges/{id}/hints/{k}` | one hint |
//! | GET | `/api/scoreboard?limit=N` | top players |
//! | GET, PUT | `/api/settings` | reading preferences |
//!
//! Authenticated routes take `Authorization: Bearer <token>`.

pub mod api;
pub mod error;
pub mod settings;
pub mod state;
pub mod store;

use std::net::SocketAddr;
use std::path::PathBuf;

pub use api::router;
pub use error::ApiError;
pub use settings::PlayerSettings;
pub use state::AppState;
pub use store::{StoreDocument, StoreError};

pub const DEFAULT_PORT: u16 = 8473;
pub const DEFAULT_STORE: &str = "./cryptolexia_store.json";

#[derive(Debug, Clone)]
pub struct ServeConfig {
    pub addr: SocketAddr,
    pub store: PathBuf,
}

/// Serve until interrupted.
pub async fn serve(config: ServeConfig, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    eprintln!(
        "cryptolexia listening on http://{} (store: {})",
        listener.local_addr()?,
        config.store.display()
    );
    axum::serve(listener, router(state))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
