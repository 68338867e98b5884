#![allow(dead_code)]

use std::path::Path;

use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use healthlens_service::cli::build_state;
use healthlens_service::{router, ServiceConfig};
use http_body_util::BodyExt;
use tower::ServiceExt;

pub const FIXTURE: &str = include_str!("../../../core/fixtures/diabetes_brochure.json");
pub const SCRIPTED_LOG: &str = include_str!("../fixtures/scripted_session.jsonl");
pub const P12_LOG: &str = include_str!("../fixtures/p12_session.jsonl");

pub const SECOND_DOC: &str = r#"{
  "id": "bewegung-kompakt",
  "title": "Bewegung im Alltag",
  "metadata": {"year": 2021, "language": "de"},
  "chapters": [
    {"number": 1, "title": "Warum Bewegung hilft", "sections": [
      {"heading": "Muskeln und Zucker", "paragraphs": ["Bewegung senkt den Blutzucker. Die Muskeln verbrauchen Zucker als Energie. Schon ein Spaziergang hilft."]},
      {"heading": "Ziele", "paragraphs": ["Setzen Sie sich kleine Ziele. Jede Woche zählt. Ein Schrittzähler zeigt den Fortschritt."]}
    ], "images": [{"id": "b1", "uri": "img/b1.jpg", "caption": "Spaziergang im Park"}]},
    {"number": 2, "title": "Sicher trainieren", "sections": [
      {"heading": "Vor dem Training", "paragraphs": ["Messen Sie vor dem Training den Blutzucker. Trinken Sie genug Wasser. Tragen Sie gute Schuhe."]}
    ], "images": []}
  ]
}"#;

pub fn write_library(dir: &Path) {
    std::fs::write(dir.join("diabetes.json"), FIXTURE).unwrap();
    std::fs::write(dir.join("bewegung.json"), SECOND_DOC).unwrap();
}

pub fn test_config(library: &Path) -> ServiceConfig {
    ServiceConfig { library: library.to_owned(), iterations: 150, ..ServiceConfig::default() }
}

pub fn app(config: &ServiceConfig) -> Router {
    router(build_state(config).unwrap())
}

pub async fn send(app: &Router, method: &str, uri: &str, body: Option<String>) -> (StatusCode, Vec<u8>) {
    let request = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(Body::from).unwrap_or_else(Body::empty))
        .unwrap();
    let response = app.clone().oneshot(request).await.unwrap();
    let status = response.status();
    let bytes = response.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

pub async fn get_json(app: &Router, uri: &str) -> serde_json::Value {
    let (status, body) = send(app, "GET", uri, None).await;
    assert_eq!(status, StatusCode::OK, "{uri}: {}", String::from_utf8_lossy(&body));
    serde_json::from_slice(&body).unwrap()
}

pub async fn post_log(app: &Router, session: &str, log: &str) {
    for line in log.lines().filter(|l| !l.trim().is_empty()) {
        let mut event: serde_json::Value = serde_json::from_str(line).unwrap();
        event["session"] = session.into();
        let (status, body) = send(app, "POST", &format!("/sessions/{session}/events"), Some(event.to_string())).await;
        assert_eq!(status, StatusCode::CREATED, "{}", String::from_utf8_lossy(&body));
    }
}
