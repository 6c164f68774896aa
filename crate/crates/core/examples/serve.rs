//! Run the labeling service with a clustered dataset preloaded as `ds1`.
//!
//! ```text
//! cargo run --release --example serve
//! curl -s localhost:8080/v1/datasets/ds1/meta
//! curl -s localhost:8080/v1/label -d '{"dataset_id":"ds1",
//!   "viewport":{"width":770,"height":840,"pan_x":0,"pan_y":0,"zoom":1},
//!   "label_dims":{"width":150,"height":12}}'
//! ```

use axum::body::Body;
use axum::http::Request;
use labelgrid::datasets;
use labelgrid::io::write_feature_xml;
use labelgrid::service::{router, ServiceConfig};
use tower::ServiceExt;

#[tokio::main]
async fn main() -> std::io::Result<()> {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let app = router(&ServiceConfig::default());

    // Router clones share one dataset store.
    let xml = write_feature_xml(&datasets::clustered(5000, 20, 3));
    let upload = Request::post("/v1/datasets").body(Body::from(xml)).expect("request");
    let resp = app.clone().oneshot(upload).await.expect("infallible");
    log::info!("preload status {}", resp.status());

    let listener = tokio::net::TcpListener::bind("127.0.0.1:8080").await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, app).await
}
