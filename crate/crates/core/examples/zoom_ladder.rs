//! Precompute placements for eight zoom levels, as a map server would.
//!
//! ```text
//! cargo run --release --example zoom_ladder
//! ```

use labelgrid::bench::zoom_ladder;
use labelgrid::{datasets, validate, EngineOptions, LabelDims, Viewport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let features = datasets::clustered(11_000, 30, 5);
    let ladder = zoom_ladder(
        &features,
        &Viewport::identity(770, 840)?,
        LabelDims::new(150.0, 12.0)?,
        &EngineOptions::default(),
        8,
        1.5,
    )?;
    for level in &ladder.levels {
        println!(
            "level {}  label {:>7.2}x{:<6.2} placed {:>6}  valid {}  {:>7.2} ms",
            level.level,
            level.dims.width,
            level.dims.height,
            level.result.labels_placed,
            validate::is_valid(&level.result),
            level.result.timings.total_ms
        );
    }
    println!("total {:.3} s", ladder.total_s);
    Ok(())
}
