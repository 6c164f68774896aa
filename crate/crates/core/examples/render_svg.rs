//! Render a clustered map with its trellis grid to an SVG file.
//!
//! ```text
//! cargo run --example render_svg -- map.svg
//! ```

use labelgrid::io::{emit_svg, FitPolicy, SvgOptions};
use labelgrid::{datasets, EngineOptions, LabelDims, Labeler, Viewport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "map.svg".into());
    let features = datasets::clustered(2000, 10, 7);
    let options = EngineOptions { allowed_overlap_pct: 10.0, ..Default::default() };
    let result = Labeler::new(LabelDims::new(70.0, 10.0)?, options)?.label(&features, &Viewport::identity(770, 840)?);

    let svg = emit_svg(
        &result,
        &features,
        &SvgOptions { show_trellis: true, fit: FitPolicy::Truncate, ..Default::default() },
    );
    std::fs::write(&out, svg)?;
    println!("{} labels written to {out}", result.labels_placed);
    Ok(())
}
