//! Local HTTP service for step-by-step sessions.
//!
//! | method | path | body | reply |
//! |---|---|---|---|
//! | POST | `/v1/sessions` | `{"scheme", "website", "persist"?}` | 201, session view |
//! | GET | `/v1/sessions/{id}` | | session view |
//! | POST | `/v1/sessions/{id}/answer` | an [`Answer`] | session view |
//! | GET | `/v1/sessions/{id}/result` | | password and trace |
//! | POST | `/v1/sessions/{id}/recall` | `{"remembered"}` | score and history |
//! | GET | `/v1/keyboard` | | layout geometry |
//!
//! Errors are `{"error", "message"}` with status 422 for a rejected answer or
//! request, 404 for an unknown session, 410 for an expired one and 409 when
//! the session is in the wrong state (answering a finished session, asking
//! for the result of an unfinished one).
//!
//! Nothing is written to disk unless the service has a record file and the
//! session was created with `"persist": true`; then the finished password is
//! appended once, when the last answer is accepted.

use std::collections::{HashMap, HashSet};
use std::net::SocketAddr;
use std::str::FromStr;
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use humhash::corpus::{PasswordRecord, RecordStore, SourceKind};
use humhash::schemes::build_box;
use humhash::wizard::{Answer, Prompt, RecallAttemptResult, WizardError, WizardSession};
use humhash::{KeyboardLayout, SchemeContext, SchemeId, Trace};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    pub idle_timeout: Duration,
    /// Where opted-in sessions are recorded. `None` disables persistence.
    pub store: Option<RecordStore>,
    pub box_seed: u64,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            idle_timeout: Duration::from_secs(1800),
            store: None,
            box_seed: humhash::security::LAB_BOX_SEED,
        }
    }
}

struct Entry {
    session: WizardSession,
    persist: bool,
    last_seen: Instant,
}

#[derive(Default)]
struct Sessions {
    live: HashMap<String, Entry>,
    expired: HashSet<String>,
}

pub struct AppState {
    config: ServiceConfig,
    context: SchemeContext,
    sessions: Mutex<Sessions>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        Self {
            context: SchemeContext::with_box(build_box(config.box_seed)),
            config,
            sessions: Mutex::new(Sessions::default()),
        }
    }

    fn sweep(&self, sessions: &mut Sessions) {
        let idle = self.config.idle_timeout;
        let stale: Vec<String> = sessions
            .live
            .iter()
            .filter(|(_, e)| e.last_seen.elapsed() > idle)
            .map(|(id, _)| id.clone())
            .collect();
        for id in stale {
            sessions.live.remove(&id);
            sessions.expired.insert(id);
        }
    }

    /// Runs `f` on a live session, refreshing its idle clock.
    fn with_session<T>(&self, id: &str, f: impl FnOnce(&mut Entry) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let mut sessions = self.sessions.lock().expect("session table poisoned");
        self.sweep(&mut sessions);
        if sessions.expired.contains(id) {
            return Err(ApiError::gone(id));
        }
        let entry = sessions.live.get_mut(id).ok_or_else(|| ApiError::not_found(id))?;
        entry.last_seen = Instant::now();
        f(entry)
    }
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    kind: &'static str,
    message: String,
}

impl ApiError {
    fn new(status: StatusCode, kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            status,
            kind,
            message: message.into(),
        }
    }

    fn validation(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "validation", message)
    }

    fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not-found", format!("no session {id}"))
    }

    fn gone(id: &str) -> Self {
        Self::new(StatusCode::GONE, "expired", format!("session {id} expired"))
    }

    fn conflict(message: impl Into<String>) -> Self {
        Self::new(StatusCode::CONFLICT, "conflict", message)
    }

    fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl From<WizardError> for ApiError {
    fn from(e: WizardError) -> Self {
        match e {
            WizardError::Validation(m) => Self::validation(m),
            WizardError::Completed | WizardError::Incomplete => Self::conflict(e.to_string()),
            WizardError::Scheme(s) => Self::validation(s.to_string()),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(json!({ "error": self.kind, "message": self.message }))).into_response()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CreateRequest {
    pub scheme: String,
    pub website: String,
    /// Record the finished password in the service's record file.
    #[serde(default)]
    pub persist: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub scheme: SchemeId,
    pub website: String,
    pub step: usize,
    pub complete: bool,
    pub prompt: Option<Prompt>,
    pub persist: bool,
}

fn view(id: &str, entry: &Entry) -> SessionView {
    let s = &entry.session;
    SessionView {
        id: id.to_string(),
        scheme: s.scheme,
        website: s.website.clone(),
        step: s.step,
        complete: s.is_complete(),
        prompt: s.prompt.clone(),
        persist: entry.persist,
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ResultView {
    pub id: String,
    pub scheme: SchemeId,
    pub website: String,
    pub password: String,
    pub trace: Trace,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecallRequest {
    pub remembered: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RecallView {
    pub attempt: RecallAttemptResult,
    pub history: Vec<RecallAttemptResult>,
}

type Shared = Arc<AppState>;

async fn create_session(State(state): State<Shared>, Json(req): Json<CreateRequest>) -> Result<(StatusCode, Json<SessionView>), ApiError> {
    let scheme = SchemeId::from_str(&req.scheme).map_err(ApiError::validation)?;
    if req.persist && state.config.store.is_none() {
        return Err(ApiError::validation("this service was started without a record file"));
    }
    let session = WizardSession::new(scheme, &req.website, state.context.clone())?;
    let id = uuid::Uuid::new_v4().to_string();
    let entry = Entry {
        session,
        persist: req.persist,
        last_seen: Instant::now(),
    };
    let body = view(&id, &entry);
    let mut sessions = state.sessions.lock().expect("session table poisoned");
    state.sweep(&mut sessions);
    sessions.live.insert(id, entry);
    Ok((StatusCode::CREATED, Json(body)))
}

async fn get_session(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<SessionView>, ApiError> {
    state.with_session(&id, |e| Ok(Json(view(&id, e))))
}

async fn answer(State(state): State<Shared>, Path(id): Path<String>, Json(answer): Json<Answer>) -> Result<Json<SessionView>, ApiError> {
    let (body, record) = state.with_session(&id, |e| {
        e.session.answer(answer)?;
        let record = match (&e.session.result, e.persist) {
            (Some(out), true) => Some(PasswordRecord::new(
                id.clone(),
                out.scheme.as_str(),
                &out.website,
                &out.password,
                SourceKind::Human { session: id.clone() },
            )),
            _ => None,
        };
        Ok((view(&id, e), record))
    })?;
    if let (Some(record), Some(store)) = (record, &state.config.store) {
        store.append(&record).map_err(|e| ApiError::internal(e.to_string()))?;
    }
    Ok(Json(body))
}

async fn result(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<ResultView>, ApiError> {
    state.with_session(&id, |e| {
        let out = e.session.result.as_ref().ok_or_else(|| ApiError::from(WizardError::Incomplete))?;
        Ok(Json(ResultView {
            id: id.clone(),
            scheme: out.scheme,
            website: out.website.clone(),
            password: out.password.clone(),
            trace: out.trace.clone(),
        }))
    })
}

async fn recall(State(state): State<Shared>, Path(id): Path<String>, Json(req): Json<RecallRequest>) -> Result<Json<RecallView>, ApiError> {
    state.with_session(&id, |e| {
        let attempt = e.session.practice(&req.remembered)?;
        Ok(Json(RecallView {
            attempt,
            history: e.session.recall.clone(),
        }))
    })
}

#[derive(Debug, Clone, Serialize)]
struct KeyView {
    base: char,
    shifted: char,
    column: u32,
    x: f64,
    y: f64,
}

#[derive(Debug, Clone, Serialize)]
struct RowView {
    name: String,
    offset: f64,
    keys: Vec<KeyView>,
}

async fn keyboard(State(state): State<Shared>) -> Json<serde_json::Value> {
    let layout: &KeyboardLayout = &state.context.layout;
    let rows: Vec<RowView> = layout
        .rows()
        .iter()
        .map(|row| RowView {
            name: row.name.clone(),
            offset: row.offset,
            keys: row
                .keys
                .iter()
                .map(|k| {
                    let pos = layout.locate(k.base).expect("every key locates");
                    KeyView {
                        base: k.base,
                        shifted: k.shifted,
                        column: k.column,
                        x: pos.x,
                        y: pos.y,
                    }
                })
                .collect(),
        })
        .collect();
    Json(json!({ "rows": rows, "specials": layout.specials() }))
}

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/v1/sessions", post(create_session))
        .route("/v1/sessions/{id}", get(get_session))
        .route("/v1/sessions/{id}/answer", post(answer))
        .route("/v1/sessions/{id}/result", get(result))
        .route("/v1/sessions/{id}/recall", post(recall))
        .route("/v1/keyboard", get(keyboard))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> anyhow::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    let app = router(Arc::new(AppState::new(config)));
    axum::serve(listener, app)
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await?;
    Ok(())
}
