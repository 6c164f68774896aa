//! Reading point files and writing placements.

pub mod json;
pub mod svg;
pub mod text;
pub mod xml;

pub use json::{emit_placements_json, parse_placements_json, placement_document, PlacementDocument};
pub use svg::{emit_svg, SvgOptions};
pub use text::{truncate_or_flow_labels, FitPolicy, TextMetrics};
pub use xml::{parse_feature_xml, write_feature_xml, FeatureFile, PointRecord};

use std::path::Path;

use crate::error::Result;

/// Reads a point file from disk.
pub fn read_feature_file(path: &Path) -> Result<FeatureFile> {
    let text = std::fs::read_to_string(path)?;
    parse_feature_xml(&text)
}
