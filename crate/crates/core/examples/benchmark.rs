//! Mean and variance of labeling time over feature counts and label sizes.
//!
//! ```text
//! cargo run --release --example benchmark
//! ```

use labelgrid::bench::{bench_grid, format_grid};
use labelgrid::{datasets, EngineOptions, LabelDims, Viewport};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pool = datasets::uniform(75_000, 1);
    let sets: Vec<_> = [1_000, 5_000, 11_000, 25_000, 75_000].iter().map(|&n| pool[..n].to_vec()).collect();
    let dims = [
        LabelDims::new(1.0, 0.4)?,
        LabelDims::new(16.0, 4.0)?,
        LabelDims::new(50.0, 8.0)?,
        LabelDims::new(150.0, 12.0)?,
        LabelDims::new(200.0, 14.0)?,
    ];
    let cells = bench_grid(&sets, &dims, &Viewport::identity(770, 840)?, &EngineOptions::default(), 5)?;
    print!("{}", format_grid(&cells));
    Ok(())
}
