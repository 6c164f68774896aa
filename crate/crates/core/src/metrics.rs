//! Quality metric and instrumentation.

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::model::Feature;
use crate::select::{Outcome, PlacementResult, UnlabeledReason};
use crate::trellis::Trellis;

/// Wall-clock split of one run: trellis population, then the merged
/// traversal and selection pass. Projection, rendering and metrics are not
/// included.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct PhaseTimings {
    pub populate_ms: f64,
    pub traverse_select_ms: f64,
    pub total_ms: f64,
}

impl PhaseTimings {
    pub fn from_instants(start: Instant, populated: Instant, done: Instant) -> PhaseTimings {
        let ms = |d: Duration| d.as_secs_f64() * 1e3;
        PhaseTimings {
            populate_ms: ms(populated - start),
            traverse_select_ms: ms(done - populated),
            total_ms: ms(done - start),
        }
    }
}

/// Labeled fraction per priority decile, best priority first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DecileHistogram {
    pub bins: [f64; 10],
    /// Features in each slice.
    pub sizes: [usize; 10],
}

impl DecileHistogram {
    /// Labeled fraction over all slices, weighted by slice size.
    pub fn overall(&self) -> f64 {
        let total: usize = self.sizes.iter().sum();
        if total == 0 {
            return 0.0;
        }
        let labeled: f64 = self.bins.iter().zip(&self.sizes).map(|(b, &s)| b * s as f64).sum();
        labeled / total as f64
    }
}

/// Splits the on-screen features, sorted by rank, into ten contiguous
/// slices and reports the labeled fraction of each. With ten or more
/// features every slice but the last holds `m / 10`; the last absorbs the
/// remainder. With fewer, the first `m` slices hold one feature each and the
/// rest are empty (reported as 0).
pub fn decile_histogram(result: &PlacementResult, features: &[Feature]) -> DecileHistogram {
    let mut visible: Vec<usize> = (0..features.len()).filter(|&i| result.projected[i].on_screen).collect();
    visible.sort_by_key(|&i| (features[i].rank, i));
    let m = visible.len();
    let mut sizes = [0usize; 10];
    if m >= 10 {
        sizes = [m / 10; 10];
        sizes[9] = m - 9 * (m / 10);
    } else {
        for s in sizes.iter_mut().take(m) {
            *s = 1;
        }
    }
    let mut bins = [0.0; 10];
    let mut start = 0;
    for k in 0..10 {
        let slice = &visible[start..start + sizes[k]];
        start += sizes[k];
        if !slice.is_empty() {
            let labeled = slice.iter().filter(|&&i| result.outcomes[i].corner().is_some()).count();
            bins[k] = labeled as f64 / slice.len() as f64;
        }
    }
    DecileHistogram { bins, sizes }
}

/// Processing positions of unlabeled features whose point lies strictly
/// inside the selected conflict rectangle of a lower-priority feature.
///
/// A labeled feature cannot be covered this way (its point is a corner of
/// its own label), so only all-occluded features are examined.
pub fn anomalies(result: &PlacementResult) -> Vec<u32> {
    let points = result.points();
    let chosen = result.chosen();
    let dims = result.conflict_dims;
    // Only selected anchors go in the grid; the rest are binned off screen.
    let anchors: Vec<(f64, f64)> =
        points.iter().zip(&chosen).map(|(&p, c)| if c.is_some() { p } else { (f64::NAN, f64::NAN) }).collect();
    let mut grid = Trellis::new(result.viewport.width_px as f64, result.viewport.height_px as f64, dims);
    grid.populate(&anchors);

    let mut out = Vec::new();
    for (a, &(x, y)) in points.iter().enumerate() {
        let input = result.order[a] as usize;
        if result.outcomes[input] != Outcome::Unlabeled(UnlabeledReason::AllOccluded) {
            continue;
        }
        let Some((col, row)) = grid.coords(x, y) else { continue };
        // A covering label is anchored less than one label size away on each
        // axis, so at most two cells away.
        let covered = neighbors(&grid, col, row, 2).any(|b| {
            b as usize > a
                && chosen[b as usize].is_some_and(|c| {
                    let (bx, by) = points[b as usize];
                    c.rect(bx, by, dims).contains_strict(x, y)
                })
        });
        if covered {
            out.push(a as u32);
        }
    }
    out
}

pub fn anomaly_count(result: &PlacementResult) -> usize {
    anomalies(result).len()
}

/// Fraction of processed features flagged by [`anomalies`].
pub fn measure_anomaly(result: &PlacementResult) -> f64 {
    result.anomaly_rate()
}

fn neighbors(grid: &Trellis, col: u32, row: u32, reach: u32) -> impl Iterator<Item = u32> + '_ {
    let rows = row.saturating_sub(reach)..=(row + reach).min(grid.n_rows - 1);
    let (c0, c1) = (col.saturating_sub(reach), (col + reach).min(grid.n_cols - 1));
    rows.flat_map(move |r| grid.row_cells(r, c0, c1).iter().copied())
}
