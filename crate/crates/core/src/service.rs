//! HTTP front end answering per-viewport labeling requests.
//!
//! * `POST /v1/datasets` with a point-file XML body stores the dataset and
//!   returns `{"dataset_id": "ds1", "n": 1000, "warnings": [...]}`.
//! * `GET /v1/datasets/{id}/meta` returns `{n, bounds, rank_range}`.
//! * `POST /v1/label` with `{dataset_id, viewport, label_dims, options}`
//!   runs the pipeline once and returns the placement JSON document.
//!
//! Errors are `{"error": "..."}` with status 400, 404 or 413.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use tower_http::cors::CorsLayer;

use crate::io::json::placement_document;
use crate::io::xml::parse_feature_xml;
use crate::model::{EngineOptions, Feature, LabelDims, Viewport};
use crate::select::Labeler;

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Largest accepted request body, in bytes.
    pub max_body_bytes: usize,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig { max_body_bytes: 32 * 1024 * 1024 }
    }
}

#[derive(Default)]
struct AppState {
    datasets: RwLock<HashMap<String, Arc<Vec<Feature>>>>,
    next_id: AtomicU64,
}

type Shared = Arc<AppState>;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelRequest {
    pub dataset_id: String,
    pub viewport: Viewport,
    pub label_dims: LabelDims,
    #[serde(default)]
    pub options: EngineOptions,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct DatasetCreated {
    pub dataset_id: String,
    pub n: usize,
    pub warnings: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct DatasetMeta {
    pub n: usize,
    /// `[min_x, min_y, max_x, max_y]` in world coordinates, absent when empty.
    pub bounds: Option<[f64; 4]>,
    pub rank_range: Option<[u32; 2]>,
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.0, Json(serde_json::json!({ "error": self.1 }))).into_response()
    }
}

fn bad_request(msg: impl Into<String>) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, msg.into())
}

pub fn router(config: &ServiceConfig) -> Router {
    let state: Shared = Arc::new(AppState::default());
    Router::new()
        .route("/v1/datasets", post(create_dataset))
        .route("/v1/datasets/{id}/meta", get(dataset_meta))
        .route("/v1/label", post(label))
        .layer(DefaultBodyLimit::max(config.max_body_bytes))
        .layer(CorsLayer::permissive())
        .with_state(state)
}

async fn create_dataset(State(state): State<Shared>, body: Bytes) -> Result<Json<DatasetCreated>, ApiError> {
    let text = std::str::from_utf8(&body).map_err(|_| bad_request("body is not UTF-8"))?;
    let file = parse_feature_xml(text).map_err(|e| bad_request(e.to_string()))?;
    let id = format!("ds{}", state.next_id.fetch_add(1, Ordering::Relaxed) + 1);
    let n = file.features.len();
    for w in &file.warnings {
        log::warn!("{id}: {w}");
    }
    state.datasets.write().expect("dataset lock").insert(id.clone(), Arc::new(file.features));
    log::info!("stored {id} with {n} features");
    Ok(Json(DatasetCreated { dataset_id: id, n, warnings: file.warnings }))
}

fn lookup(state: &AppState, id: &str) -> Result<Arc<Vec<Feature>>, ApiError> {
    state
        .datasets
        .read()
        .expect("dataset lock")
        .get(id)
        .cloned()
        .ok_or_else(|| ApiError(StatusCode::NOT_FOUND, format!("unknown dataset {id:?}")))
}

async fn dataset_meta(State(state): State<Shared>, Path(id): Path<String>) -> Result<Json<DatasetMeta>, ApiError> {
    let features = lookup(&state, &id)?;
    let bounds = features.iter().fold(None, |acc: Option<[f64; 4]>, f| {
        let [x0, y0, x1, y1] = acc.unwrap_or([f.world_x, f.world_y, f.world_x, f.world_y]);
        Some([x0.min(f.world_x), y0.min(f.world_y), x1.max(f.world_x), y1.max(f.world_y)])
    });
    let rank_range = features.iter().fold(None, |acc: Option<[u32; 2]>, f| {
        let [lo, hi] = acc.unwrap_or([f.rank, f.rank]);
        Some([lo.min(f.rank), hi.max(f.rank)])
    });
    Ok(Json(DatasetMeta { n: features.len(), bounds, rank_range }))
}

async fn label(State(state): State<Shared>, body: Bytes) -> Result<Response, ApiError> {
    let req: LabelRequest = serde_json::from_slice(&body).map_err(|e| bad_request(e.to_string()))?;
    let v = req.viewport;
    let viewport = Viewport::new(v.width_px, v.height_px, v.pan_x, v.pan_y, v.zoom)
        .map_err(|e| bad_request(format!("viewport: {e}")))?;
    let dims = LabelDims::new(req.label_dims.width, req.label_dims.height)
        .map_err(|e| bad_request(format!("label_dims: {e}")))?;
    let labeler = Labeler::new(dims, req.options).map_err(|e| bad_request(format!("options: {e}")))?;
    let features = lookup(&state, &req.dataset_id)?;

    let doc = tokio::task::spawn_blocking(move || {
        let result = labeler.label(&features, &viewport);
        placement_document(&result, &features)
    })
    .await
    .map_err(|e| ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string()))?;
    Ok(([(axum::http::header::CONTENT_TYPE, "application/json")], doc.to_json()).into_response())
}

/// Binds `addr` and serves until the process is stopped.
pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(&config)).await
}
