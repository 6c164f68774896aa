//! Timing grids and zoom-ladder precomputation.

use std::fmt::Write as _;
use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{EngineOptions, Feature, LabelDims, Viewport};
use crate::select::{Labeler, PlacementResult};

/// One (feature count, label size) cell of a timing grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCell {
    pub n: usize,
    pub dims: LabelDims,
    /// Mean and variance of the pipeline time, in seconds, over the repeats.
    pub mean_s: f64,
    pub var_s: f64,
    pub labels_placed: usize,
}

/// Labels `features` `repeat` times and reports the timing statistics.
/// Runs execute sequentially on the calling thread.
pub fn time_runs(labeler: &Labeler, features: &[Feature], viewport: &Viewport, repeat: usize) -> BenchCell {
    let repeat = repeat.max(1);
    let mut times = Vec::with_capacity(repeat);
    let mut placed = 0;
    for _ in 0..repeat {
        let r = labeler.label(features, viewport);
        times.push(r.timings.total_ms / 1e3);
        placed = r.labels_placed;
    }
    let mean = times.iter().sum::<f64>() / repeat as f64;
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / repeat as f64;
    BenchCell { n: features.len(), dims: labeler.dims(), mean_s: mean, var_s: var, labels_placed: placed }
}

/// Every combination of point set and label size.
pub fn bench_grid(
    sets: &[Vec<Feature>],
    dims: &[LabelDims],
    viewport: &Viewport,
    options: &EngineOptions,
    repeat: usize,
) -> Result<Vec<BenchCell>> {
    let mut cells = Vec::with_capacity(sets.len() * dims.len());
    for set in sets {
        for &d in dims {
            let labeler = Labeler::new(d, options.clone())?;
            cells.push(time_runs(&labeler, set, viewport, repeat));
        }
    }
    Ok(cells)
}

/// Renders cells as a table with one row per feature count and one column
/// per label size: mean seconds, then labels placed.
pub fn format_grid(cells: &[BenchCell]) -> String {
    let mut sizes: Vec<usize> = cells.iter().map(|c| c.n).collect();
    sizes.dedup();
    let mut dims: Vec<LabelDims> = Vec::new();
    for c in cells {
        if !dims.contains(&c.dims) {
            dims.push(c.dims);
        }
    }
    let mut s = String::new();
    let _ = write!(s, "{:>8}", "features");
    for d in &dims {
        let _ = write!(s, " {:>22}", format!("{}x{}", d.width, d.height));
    }
    s.push('\n');
    for &n in &sizes {
        let _ = write!(s, "{:>8}", n);
        for d in &dims {
            match cells.iter().find(|c| c.n == n && c.dims == *d) {
                Some(c) => {
                    let _ = write!(s, " {:>10.4}s ±{:<8.1e}", c.mean_s, c.var_s.sqrt());
                }
                None => {
                    let _ = write!(s, " {:>22}", "-");
                }
            }
        }
        s.push('\n');
        let _ = write!(s, "{:>8}", "labels");
        for d in &dims {
            let placed = cells.iter().find(|c| c.n == n && c.dims == *d).map(|c| c.labels_placed);
            let _ = write!(s, " {:>22}", placed.map_or("-".into(), |p| p.to_string()));
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Clone)]
pub struct LadderLevel {
    pub level: usize,
    /// Label size used at this level: the base size divided by `factor^level`.
    pub dims: LabelDims,
    pub result: PlacementResult,
}

#[derive(Debug, Clone)]
pub struct ZoomLadder {
    pub levels: Vec<LadderLevel>,
    pub total_s: f64,
}

/// Labels the same view at `levels` zoom steps. Zooming in by `factor` is
/// modelled as shrinking the labels by `factor` at a fixed screen size.
pub fn zoom_ladder(
    features: &[Feature],
    viewport: &Viewport,
    base: LabelDims,
    options: &EngineOptions,
    levels: usize,
    factor: f64,
) -> Result<ZoomLadder> {
    if levels == 0 {
        return Err(Error::InvalidOptions("zoom ladder needs at least one level".into()));
    }
    if !(factor.is_finite() && factor > 1.0) {
        return Err(Error::InvalidOptions(format!("zoom factor must exceed 1, got {factor}")));
    }
    let start = Instant::now();
    let mut out = Vec::with_capacity(levels);
    for level in 0..levels {
        let dims = base.scaled(factor.powi(-(level as i32)))?;
        let result = Labeler::new(dims, options.clone())?.label(features, viewport);
        out.push(LadderLevel { level, dims, result });
    }
    Ok(ZoomLadder { levels: out, total_s: start.elapsed().as_secs_f64() })
}
