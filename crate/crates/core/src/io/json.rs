//! Placement output as JSON.
//!
//! Floats are rounded to six decimals before serialization and fields are
//! written in declaration order, so two runs on the same input produce the
//! same bytes apart from the timing fields.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::metrics::decile_histogram;
use crate::model::{EngineOptions, Feature, LabelDims, Rect, Viewport};
use crate::select::{Outcome, PlacementResult, UnlabeledReason};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementDocument {
    pub viewport: Viewport,
    pub label_dims: LabelDims,
    pub options: EngineOptions,
    pub placements: Vec<PlacementRecord>,
    pub metrics: MetricsRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlacementRecord {
    pub id: u32,
    pub rank: u32,
    pub text: String,
    pub candidate_index: Option<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<UnlabeledReason>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rect: Option<Rect>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub features_processed: usize,
    pub labels_placed: usize,
    pub anomaly_count: usize,
    pub anomaly_rate: f64,
    pub predicate_tests: u64,
    pub elapsed_ms: f64,
    pub populate_ms: f64,
    pub traverse_select_ms: f64,
    pub histogram: [f64; 10],
}

impl PlacementDocument {
    /// Zeroes the wall-clock fields so documents can be compared byte for byte.
    pub fn without_timing(mut self) -> PlacementDocument {
        self.metrics.elapsed_ms = 0.0;
        self.metrics.populate_ms = 0.0;
        self.metrics.traverse_select_ms = 0.0;
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("placement document serializes");
        s.push('\n');
        s
    }
}

pub fn round6(v: f64) -> f64 {
    let r = (v * 1e6).round() / 1e6;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_rect(r: Rect) -> Rect {
    Rect { left: round6(r.left), top: round6(r.top), width: round6(r.width), height: round6(r.height) }
}

/// Builds the output document. `features` must be the slice the result was
/// computed from.
pub fn placement_document(result: &PlacementResult, features: &[Feature]) -> PlacementDocument {
    let placements = features
        .iter()
        .zip(&result.outcomes)
        .map(|(f, outcome)| {
            let (candidate_index, reason, rect) = match *outcome {
                Outcome::Labeled { corner, rect } => (Some(corner.index()), None, Some(round_rect(rect))),
                Outcome::Unlabeled(reason) => (None, Some(reason), None),
            };
            PlacementRecord { id: f.id, rank: f.rank, text: f.primary_text.clone(), candidate_index, reason, rect }
        })
        .collect();
    let hist = decile_histogram(result, features);
    let v = result.viewport;
    let options = EngineOptions {
        allowed_overlap_pct: round6(result.options.allowed_overlap_pct),
        prox_weight: round6(result.options.prox_weight),
        ..result.options.clone()
    };
    PlacementDocument {
        viewport: Viewport { pan_x: round6(v.pan_x), pan_y: round6(v.pan_y), zoom: round6(v.zoom), ..v },
        label_dims: LabelDims { width: round6(result.dims.width), height: round6(result.dims.height) },
        options,
        placements,
        metrics: MetricsRecord {
            features_processed: result.features_processed,
            labels_placed: result.labels_placed,
            anomaly_count: result.anomaly_count,
            anomaly_rate: round6(result.anomaly_rate()),
            predicate_tests: result.predicate_tests,
            elapsed_ms: round6(result.timings.total_ms),
            populate_ms: round6(result.timings.populate_ms),
            traverse_select_ms: round6(result.timings.traverse_select_ms),
            histogram: hist.bins.map(round6),
        },
    }
}

pub fn emit_placements_json(result: &PlacementResult, features: &[Feature]) -> String {
    placement_document(result, features).to_json()
}

pub fn parse_placements_json(text: &str) -> Result<PlacementDocument> {
    Ok(serde_json::from_str(text)?)
}
