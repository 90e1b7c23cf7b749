//! JSON-over-HTTP API backed by an [`AnalysisStore`].

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::rejection::BytesRejection;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;
use sirenless_core::store::IndexEntry;
use sirenless_core::{Analyzer, AnalysisStore, ConfigOverrides, Error, SCHEMA_VERSION};
use tower_http::services::ServeDir;

pub const DEFAULT_BODY_LIMIT: usize = 1024 * 1024;

pub struct AppState {
    pub analyzer: Analyzer,
    pub store: AnalysisStore,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnalyzeRequest {
    pub text: String,
    #[serde(default)]
    pub title: Option<String>,
    #[serde(default)]
    pub config: ConfigOverrides,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AnalyzeResponse {
    pub id: String,
}

struct ApiError {
    status: StatusCode,
    code: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError {
            status,
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for ApiError {
    fn from(e: Error) -> Self {
        match e {
            Error::Analyze(_) => ApiError::new(StatusCode::BAD_REQUEST, "invalid_text", e.to_string()),
            Error::Config(_) => ApiError::new(StatusCode::BAD_REQUEST, "invalid_config", e.to_string()),
            _ => {
                tracing::error!(error = %e, "request failed");
                ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string())
            }
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "error": { "code": self.code, "message": self.message } });
        (self.status, Json(body)).into_response()
    }
}

fn json_text(status: StatusCode, text: String) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json")], text).into_response()
}

async fn health() -> Json<serde_json::Value> {
    Json(json!({ "status": "ok", "schema_version": SCHEMA_VERSION }))
}

async fn analyze(
    State(state): State<Arc<AppState>>,
    body: Result<Bytes, BytesRejection>,
) -> Result<Response, ApiError> {
    let body = body.map_err(|e| {
        let code = if e.status() == StatusCode::PAYLOAD_TOO_LARGE { "payload_too_large" } else { "malformed_body" };
        ApiError::new(e.status(), code, e.body_text())
    })?;
    let request: AnalyzeRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(StatusCode::BAD_REQUEST, "malformed_body", e.to_string()))?;
    let analyzer = state.analyzer.with_overrides(&request.config)?;
    let worker = Arc::clone(&state);
    let id = tokio::task::spawn_blocking(move || -> Result<String, Error> {
        let result = analyzer.analyze(&request.text, request.title)?;
        worker.store.put(&result)?;
        Ok(result.id)
    })
    .await
    .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", e.to_string()))??;
    Ok((StatusCode::CREATED, Json(AnalyzeResponse { id })).into_response())
}

async fn get_analysis(State(state): State<Arc<AppState>>, Path(id): Path<String>) -> Result<Response, ApiError> {
    match state.store.get_raw(&id)? {
        Some(text) => Ok(json_text(StatusCode::OK, text)),
        None => Err(ApiError::new(StatusCode::NOT_FOUND, "not_found", format!("no analysis {id}"))),
    }
}

async fn list_analyses(State(state): State<Arc<AppState>>) -> Result<Json<Vec<IndexEntry>>, ApiError> {
    Ok(Json(state.store.list()?))
}

pub fn router(state: Arc<AppState>, body_limit: usize, static_dir: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/analyze", post(analyze))
        .route("/api/analyses", get(list_analyses))
        .route("/api/analyses/{id}", get(get_analysis))
        .layer(DefaultBodyLimit::max(body_limit))
        .with_state(state);
    match static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

pub async fn serve(listener: tokio::net::TcpListener, app: Router) -> std::io::Result<()> {
    let addr: Option<SocketAddr> = listener.local_addr().ok();
    if let Some(addr) = addr {
        tracing::info!(%addr, "listening");
    }
    axum::serve(listener, app).await
}
