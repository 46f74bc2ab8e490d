//! Stateless HTTP/JSON front end.

use std::path::PathBuf;

use axum::body::Bytes;
use axum::extract::rejection::QueryRejection;
use axum::extract::Query;
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde_json::Value;
use tower_http::services::ServeDir;

use crate::api::{self, ApiError, ApiResult, ErrorKind, Params};

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match self.kind {
            ErrorKind::BadRequest => StatusCode::BAD_REQUEST,
            ErrorKind::CapExceeded => StatusCode::PAYLOAD_TOO_LARGE,
            ErrorKind::Unprocessable => StatusCode::UNPROCESSABLE_ENTITY,
            ErrorKind::NotFound => StatusCode::NOT_FOUND,
        };
        (status, Json(self.to_json())).into_response()
    }
}

type Q = Result<Query<Params>, QueryRejection>;

fn params(q: Q) -> ApiResult<Params> {
    q.map(|Query(p)| p).map_err(|e| ApiError::bad_request(e.body_text()))
}

/// Runs CPU-bound work off the async executor.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> ApiResult<T> + Send + 'static) -> ApiResult<T> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError {
        kind: ErrorKind::BadRequest,
        code: "internal",
        message: e.to_string(),
    })?
}

async fn template(q: Q) -> ApiResult<Json<Value>> {
    let t = api::build(api::shape_from_params(&params(q)?)?)?;
    Ok(Json(api::template_info(&t)?))
}

async fn count(q: Q) -> ApiResult<Json<Value>> {
    let p = params(q)?;
    let t = api::build(api::shape_from_params(&p)?)?;
    let g = api::group_from_params(&p)?;
    blocking(move || api::count(&t, g)).await.map(Json)
}

async fn enumerate(q: Q) -> ApiResult<Json<Value>> {
    let p = params(q)?;
    let t = api::build(api::shape_from_params(&p)?)?;
    let g = api::group_from_params(&p)?;
    let offset = match p.get("offset") {
        None => 0,
        Some(s) => s.parse().map_err(|_| ApiError::bad_request("offset must be a non-negative integer"))?,
    };
    let limit = match p.get("limit") {
        None => 16,
        Some(s) => s.parse().map_err(|_| ApiError::bad_request("limit must be a non-negative integer"))?,
    };
    blocking(move || api::enumerate(&t, g, offset, limit)).await.map(Json)
}

async fn min_tiles(q: Q) -> ApiResult<Json<Value>> {
    let p = params(q)?;
    let t = api::build(api::shape_from_params(&p)?)?;
    let g = api::group_from_params(&p)?;
    blocking(move || api::min_tiles(&t, g)).await.map(Json)
}

async fn census(q: Q) -> ApiResult<Json<Value>> {
    let t = api::build(api::shape_from_params(&params(q)?)?)?;
    blocking(move || Ok(api::census(&t))).await.map(Json)
}

async fn table(q: Q) -> ApiResult<Json<Value>> {
    let p = params(q)?;
    let max = match p.get("max") {
        None => 5,
        Some(s) => s.parse().map_err(|_| ApiError::bad_request("max must be a positive integer"))?,
    };
    blocking(move || api::table_json(max)).await.map(Json)
}

async fn classify(body: Bytes) -> ApiResult<Json<Value>> {
    let k = kolam::parse_kolam(std::str::from_utf8(&body).map_err(|e| ApiError::bad_request(e.to_string()))?)?;
    Ok(Json(api::classify(&k)))
}

async fn trace(body: Bytes) -> ApiResult<Json<Value>> {
    let k = kolam::parse_kolam(std::str::from_utf8(&body).map_err(|e| ApiError::bad_request(e.to_string()))?)?;
    blocking(move || Ok(api::trace(&k))).await.map(Json)
}

async fn render(body: Bytes) -> ApiResult<Response> {
    let (k, style) = api::parse_render_request(&body)?;
    let svg = blocking(move || api::render(&k, &style)).await?;
    Ok(([(header::CONTENT_TYPE, "image/svg+xml")], svg).into_response())
}

async fn feasibility(body: Bytes) -> ApiResult<Json<Value>> {
    let req: api::FeasibilityRequest = serde_json::from_slice(&body)?;
    Ok(Json(api::feasibility(&req.multiset, req.template)?))
}

async fn compose(body: Bytes) -> ApiResult<Json<Value>> {
    let req: api::ComposeRequest = serde_json::from_slice(&body)?;
    let (value, _) = blocking(move || api::compose(req.template, &req.multiset, Some(api::COMPOSE_NODE_LIMIT))).await?;
    Ok(Json(value))
}

async fn validate(body: Bytes) -> ApiResult<Json<Value>> {
    blocking(move || api::validate_placement(&body)).await.map(Json)
}

async fn not_found() -> ApiError {
    ApiError { kind: ErrorKind::NotFound, code: "not-found", message: "no such endpoint".into() }
}

/// The API routes, plus static files from `ui` when given.
pub fn router(ui: Option<PathBuf>) -> Router {
    let api = Router::new()
        .route("/api/template", get(template))
        .route("/api/count", get(count))
        .route("/api/enumerate", get(enumerate))
        .route("/api/min-tiles", get(min_tiles))
        .route("/api/census", get(census))
        .route("/api/table", get(table))
        .route("/api/classify", post(classify))
        .route("/api/trace", post(trace))
        .route("/api/render", post(render))
        .route("/api/feasibility", post(feasibility))
        .route("/api/compose", post(compose))
        .route("/api/placement/validate", post(validate));
    match ui {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api.fallback(not_found),
    }
}

pub async fn serve(addr: std::net::SocketAddr, ui: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(ui)).await
}
