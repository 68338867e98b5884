//! JSON-over-HTTP routes.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use healthlens_core::corpus::{Chapter, Document};
use healthlens_core::provenance::{build_matrix_view, build_process_graph, compute_metrics, derive_triples, Taxonomy};
use healthlens_core::views::{
    build_history_cloud, compute_tilebar, expand_snippet, find_snippets, group_by_section, layout_list, layout_wordle, rank_images,
    Canvas, Direction, HistoryMode, LayoutConfig, RankedImage, SnippetGroup, SnippetHit, TileBarGrid,
};
use healthlens_core::{CloudLayout, InteractionEvent, InteractionTriple, WordCloudSpec};
use serde::{Deserialize, Serialize};

use crate::config::ServiceConfig;
use crate::library::{ChapterViews, LibraryStore};
use crate::sessions::{ClickCounts, SessionError, SessionStore};

#[derive(Clone)]
pub struct AppState {
    pub library: Arc<LibraryStore>,
    pub sessions: Arc<SessionStore>,
    pub taxonomy: Arc<Taxonomy>,
    pub config: Arc<ServiceConfig>,
}

#[derive(Debug, thiserror::Error)]
pub enum ApiError {
    #[error("document `{0}` not found")]
    DocumentNotFound(String),
    #[error("document `{doc}` has no chapter {chapter}")]
    ChapterNotFound { doc: String, chapter: u32 },
    #[error("{0}")]
    BadRequest(String),
    #[error(transparent)]
    Session(#[from] SessionError),
    #[error("{0}")]
    Internal(String),
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    error: &'a str,
    message: String,
}

impl ApiError {
    fn status_and_code(&self) -> (StatusCode, &'static str) {
        match self {
            ApiError::DocumentNotFound(_) => (StatusCode::NOT_FOUND, "document_not_found"),
            ApiError::ChapterNotFound { .. } => (StatusCode::NOT_FOUND, "chapter_not_found"),
            ApiError::BadRequest(_) => (StatusCode::BAD_REQUEST, "bad_request"),
            ApiError::Session(SessionError::InvalidEvent(_)) => (StatusCode::BAD_REQUEST, "invalid_event"),
            ApiError::Session(SessionError::InvalidSessionId(_)) => (StatusCode::BAD_REQUEST, "invalid_session_id"),
            ApiError::Session(SessionError::TimestampRegression { .. }) => (StatusCode::CONFLICT, "timestamp_regression"),
            ApiError::Session(_) | ApiError::Internal(_) => (StatusCode::INTERNAL_SERVER_ERROR, "internal"),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let (status, code) = self.status_and_code();
        (status, Json(ErrorBody { error: code, message: self.to_string() })).into_response()
    }
}

type ApiResult<T> = Result<Json<T>, ApiError>;

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/documents", get(list_documents))
        .route("/documents/{id}", get(get_document))
        .route("/documents/{id}/chapters/{n}/wordcloud", get(word_cloud))
        .route("/documents/{id}/chapters/{n}/historycloud", get(history_cloud))
        .route("/documents/{id}/chapters/{n}/images", get(images))
        .route("/documents/{id}/chapters/{n}/fulltext", get(full_text))
        .route("/documents/{id}/tilebar", get(tilebar))
        .route("/documents/{id}/snippets", get(snippets))
        .route("/documents/{id}/snippets/expand", post(expand))
        .route("/sessions/{id}/events", post(post_event))
        .route("/sessions/{id}/provenance/metrics", get(metrics))
        .route("/sessions/{id}/provenance/graph", get(graph))
        .route("/sessions/{id}/provenance/matrix", get(matrix))
        .with_state(state)
}

fn parse<T: FromStr>(name: &str, value: Option<&String>, default: T) -> Result<T, ApiError> {
    match value {
        None => Ok(default),
        Some(v) => v.parse().map_err(|_| ApiError::BadRequest(format!("invalid `{name}`: `{v}`"))),
    }
}

fn require<'a>(name: &str, value: Option<&'a String>) -> Result<&'a str, ApiError> {
    value.map(String::as_str).filter(|v| !v.trim().is_empty()).ok_or_else(|| ApiError::BadRequest(format!("missing `{name}`")))
}

impl AppState {
    fn document(&self, id: &str) -> Result<&Document, ApiError> {
        self.library.document(id).ok_or_else(|| ApiError::DocumentNotFound(id.to_string()))
    }

    fn chapter(&self, id: &str, n: u32) -> Result<(&Chapter, &ChapterViews), ApiError> {
        let doc = self.document(id)?;
        let missing = || ApiError::ChapterNotFound { doc: id.to_string(), chapter: n };
        let chapter = doc.chapter(n).ok_or_else(missing)?;
        let views = self.library.chapter_views(id, n).ok_or_else(missing)?;
        Ok((chapter, views))
    }

    fn clicks(&self, session: Option<&String>, doc: &str) -> ClickCounts {
        session.map(|s| self.sessions.with_session(s, |log| log.clicks(doc))).unwrap_or_default()
    }

    fn triples(&self, session: &str) -> Result<Vec<InteractionTriple>, ApiError> {
        let events = self.sessions.with_session(session, |log| log.events().to_vec());
        derive_triples(&events, self.config.min_duration_s).map_err(|e| ApiError::Internal(e.to_string()))
    }

    fn canvas(&self) -> Canvas<f64> {
        Canvas { width: self.config.canvas_width, height: self.config.canvas_height }
    }
}

type Params = Query<BTreeMap<String, String>>;

async fn list_documents(State(state): State<AppState>) -> Json<Vec<healthlens_core::views::DocumentPreview>> {
    Json(state.library.previews().to_vec())
}

async fn get_document(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<Document> {
    Ok(Json(state.document(&id)?.clone()))
}

#[derive(Serialize)]
pub struct CloudResponse {
    pub chapter: u32,
    pub k: usize,
    pub spec: WordCloudSpec,
    pub layout: Option<CloudLayout>,
    /// Set when the chosen layout could not be computed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub layout_error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LayoutKind {
    Wordle,
    List,
    None,
}

impl FromStr for LayoutKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "wordle" => Ok(LayoutKind::Wordle),
            "list" => Ok(LayoutKind::List),
            "none" => Ok(LayoutKind::None),
            _ => Err(()),
        }
    }
}

fn split_layout(result: Result<CloudLayout, String>) -> (Option<CloudLayout>, Option<String>) {
    match result {
        Ok(l) => (Some(l), None),
        Err(e) => (None, Some(e)),
    }
}

async fn word_cloud(State(state): State<AppState>, Path((id, n)): Path<(String, u32)>, Query(q): Params) -> ApiResult<CloudResponse> {
    let (_, views) = state.chapter(&id, n)?;
    let kind = parse("layout", q.get("layout"), LayoutKind::Wordle)?;
    let spec = views.cloud.clone().with_clicks(&state.clicks(q.get("session"), &id).terms);
    let (layout, layout_error) = match kind {
        LayoutKind::Wordle => split_layout(views.wordle.clone()),
        LayoutKind::List => split_layout(views.list.clone()),
        LayoutKind::None => (None, None),
    };
    Ok(Json(CloudResponse { chapter: n, k: views.model.k, spec, layout, layout_error }))
}

async fn history_cloud(
    State(state): State<AppState>,
    Path((id, n)): Path<(String, u32)>,
    Query(q): Params,
) -> ApiResult<CloudResponse> {
    let (_, views) = state.chapter(&id, n)?;
    let mode: HistoryMode = parse("mode", q.get("mode"), HistoryMode::Explored)?;
    let kind = parse("layout", q.get("layout"), LayoutKind::Wordle)?;
    let session = require("session", q.get("session"))?;
    let clicks = state.sessions.with_session(session, |log| log.clicks(&id)).terms;
    // Only terms from this chapter's cloud belong in its history cloud.
    let chapter_terms: BTreeMap<String, u32> =
        clicks.into_iter().filter(|(t, _)| views.cloud.entries.iter().any(|e| &e.term == t)).collect();
    let spec = build_history_cloud(&chapter_terms, &views.cloud, mode);
    let (layout, layout_error) = if spec.is_empty() {
        (None, None)
    } else {
        let cfg = LayoutConfig::default();
        match kind {
            LayoutKind::Wordle => split_layout(layout_wordle(&spec, state.canvas(), state.config.seed, &cfg).map_err(|e| e.to_string())),
            LayoutKind::List => split_layout(layout_list(&spec, &cfg).map_err(|e| e.to_string())),
            LayoutKind::None => (None, None),
        }
    };
    Ok(Json(CloudResponse { chapter: n, k: spec.k, spec, layout, layout_error }))
}

#[derive(Serialize)]
pub struct ImagePage {
    pub chapter: u32,
    pub total: usize,
    pub page: usize,
    pub page_size: usize,
    pub images: Vec<RankedImage>,
}

async fn images(State(state): State<AppState>, Path((id, n)): Path<(String, u32)>, Query(q): Params) -> ApiResult<ImagePage> {
    let (chapter, _) = state.chapter(&id, n)?;
    let page = parse("page", q.get("page"), 0usize)?;
    let page_size = parse("page_size", q.get("page_size"), state.config.image_page_size)?.max(1);
    let mut ranking = rank_images(chapter);
    if parse("history", q.get("history"), false)? {
        let session = require("session", q.get("session"))?;
        let clicked: BTreeSet<String> = state.sessions.with_session(session, |log| log.clicks(&id)).images.into_keys().collect();
        ranking = ranking.retain_clicked(&clicked);
    }
    Ok(Json(ImagePage { chapter: n, total: ranking.images.len(), page, page_size, images: ranking.page(page, page_size).to_vec() }))
}

async fn full_text(State(state): State<AppState>, Path((id, n)): Path<(String, u32)>) -> ApiResult<Chapter> {
    Ok(Json(state.chapter(&id, n)?.0.clone()))
}

async fn tilebar(State(state): State<AppState>, Path(id): Path<String>, Query(q): Params) -> ApiResult<TileBarGrid> {
    let doc = state.document(&id)?;
    let term = require("term", q.get("term"))?;
    let chunk = parse("chunk_size", q.get("chunk_size"), state.config.chunk_size)?;
    if chunk == 0 {
        return Err(ApiError::BadRequest("`chunk_size` must be positive".into()));
    }
    Ok(Json(compute_tilebar(doc, term, chunk, state.library.pipeline())))
}

#[derive(Serialize)]
pub struct SnippetResponse {
    pub term: String,
    pub total: usize,
    pub groups: Vec<SnippetGroup>,
}

async fn snippets(State(state): State<AppState>, Path(id): Path<String>, Query(q): Params) -> ApiResult<SnippetResponse> {
    let doc = state.document(&id)?;
    let term = require("term", q.get("term"))?;
    let pipeline = state.library.pipeline();
    let hits = find_snippets(doc, term, pipeline);
    Ok(Json(SnippetResponse { term: pipeline.query_key(term), total: hits.len(), groups: group_by_section(&hits) }))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpandRequest {
    hit: SnippetHit,
    direction: Direction,
}

fn json_body<T: for<'de> Deserialize<'de>>(body: &Bytes) -> Result<T, String> {
    serde_json::from_slice(body).map_err(|e| e.to_string())
}

async fn expand(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> ApiResult<SnippetHit> {
    let doc = state.document(&id)?;
    let req: ExpandRequest = json_body(&body).map_err(ApiError::BadRequest)?;
    let section = req.hit.section(doc).ok_or_else(|| ApiError::BadRequest("hit does not reference a section".into()))?;
    if req.hit.window.0 > req.hit.window.1 || req.hit.window.1 >= section.sentences.len() {
        return Err(ApiError::BadRequest("hit window out of range".into()));
    }
    Ok(Json(expand_snippet(doc, &req.hit, req.direction, state.library.pipeline())))
}

#[derive(Serialize)]
pub struct EventAck {
    pub session: String,
    pub length: usize,
}

async fn post_event(State(state): State<AppState>, Path(id): Path<String>, body: Bytes) -> Result<(StatusCode, Json<EventAck>), ApiError> {
    let event: InteractionEvent = json_body(&body).map_err(|e| ApiError::Session(SessionError::InvalidEvent(e)))?;
    state.taxonomy.validate_tool(&event.tool).map_err(|e| ApiError::Session(SessionError::InvalidEvent(e.to_string())))?;
    let sessions = state.sessions.clone();
    let session = id.clone();
    let length = tokio::task::spawn_blocking(move || sessions.append(&session, event))
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))??;
    Ok((StatusCode::CREATED, Json(EventAck { session: id, length })))
}

async fn metrics(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<healthlens_core::provenance::ProvenanceMetrics> {
    Ok(Json(compute_metrics(&state.triples(&id)?)))
}

fn text(content_type: &'static str, body: String) -> Response {
    ([(header::CONTENT_TYPE, content_type)], body).into_response()
}

async fn graph(State(state): State<AppState>, Path(id): Path<String>, Query(q): Params) -> Result<Response, ApiError> {
    let graph = build_process_graph(&state.triples(&id)?);
    match q.get("format").map(String::as_str).unwrap_or("json") {
        "json" => Ok(Json(graph).into_response()),
        "dot" => Ok(text("text/vnd.graphviz", graph.to_dot())),
        other => Err(ApiError::BadRequest(format!("unsupported format `{other}`"))),
    }
}

async fn matrix(State(state): State<AppState>, Path(id): Path<String>, Query(q): Params) -> Result<Response, ApiError> {
    let visible = parse("max_visible", q.get("max_visible"), state.config.max_visible_transitions)?;
    let view = build_matrix_view(&state.triples(&id)?, &state.taxonomy, visible);
    match q.get("format").map(String::as_str).unwrap_or("json") {
        "json" => Ok(Json(view).into_response()),
        "svg" => {
            let palette = healthlens_core::views::Palette::default();
            Ok(text("image/svg+xml", view.to_svg(24, &palette.scale_low, &palette.scale_high)))
        }
        other => Err(ApiError::BadRequest(format!("unsupported format `{other}`"))),
    }
}
