//! Post-hoc checks of a placement.
//!
//! Everything here works from the selected rectangles and the oracle's
//! intersection test; none of it trusts the trellis.

use std::fmt;

use crate::metrics;
use crate::model::{candidate_rects, Corner};
use crate::oracle::rects_intersect_strict;
use crate::select::{Outcome, PlacementResult, UnlabeledReason};
use crate::trellis::Trellis;

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Two selected labels (input indices) overlap.
    Overlap { a: u32, b: u32 },
    /// A selected label does not have its feature's point at the named corner.
    NotAnchored { feature: u32 },
    /// An all-occluded feature has a candidate that no higher-priority label
    /// blocks, and it is not flagged as an anomaly.
    Unexplained { feature: u32, corner: Corner },
    /// The stored anomaly counter disagrees with a recount.
    AnomalyCount { stored: usize, recounted: usize },
    /// A processed feature was reported below threshold or off screen.
    WrongReason { feature: u32, reason: UnlabeledReason },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Overlap { a, b } => write!(f, "labels of features {a} and {b} overlap"),
            Violation::NotAnchored { feature } => write!(f, "label of feature {feature} is not corner-anchored"),
            Violation::Unexplained { feature, corner } => {
                write!(f, "feature {feature} is unlabeled but its {corner:?} candidate is unobstructed")
            }
            Violation::AnomalyCount { stored, recounted } => {
                write!(f, "anomaly count {stored} does not match recount {recounted}")
            }
            Violation::WrongReason { feature, reason } => {
                write!(f, "processed feature {feature} reported as {}", reason.as_str())
            }
        }
    }
}

/// Runs every check and returns all violations found. An empty list means
/// the placement is valid.
pub fn check(result: &PlacementResult) -> Vec<Violation> {
    let mut out = Vec::new();
    check_disjoint(result, &mut out);
    check_anchoring(result, &mut out);
    check_priority_guarantee(result, &mut out);
    out
}

pub fn is_valid(result: &PlacementResult) -> bool {
    check(result).is_empty()
}

fn grid_for(result: &PlacementResult) -> (Vec<(f64, f64)>, Trellis) {
    let points = result.points();
    let mut grid =
        Trellis::new(result.viewport.width_px as f64, result.viewport.height_px as f64, result.conflict_dims);
    grid.populate(&points);
    (points, grid)
}

/// Selected conflict rectangles are pairwise strictly disjoint. Two labels
/// can only meet if their points are within two label sizes, i.e. four cells.
fn check_disjoint(result: &PlacementResult, out: &mut Vec<Violation>) {
    let (points, grid) = grid_for(result);
    let chosen = result.chosen();
    let dims = result.conflict_dims;
    for a in 0..points.len() {
        let Some(ca) = chosen[a] else { continue };
        let ra = ca.rect(points[a].0, points[a].1, dims);
        let Some((col, row)) = grid.cell_of(a as u32) else { continue };
        for b in window(&grid, col, row, 4) {
            let b = b as usize;
            if b <= a {
                continue;
            }
            if let Some(cb) = chosen[b] {
                if rects_intersect_strict(&ra, &cb.rect(points[b].0, points[b].1, dims)) {
                    out.push(Violation::Overlap { a: result.order[a], b: result.order[b] });
                }
            }
        }
    }
}

fn check_anchoring(result: &PlacementResult, out: &mut Vec<Violation>) {
    for (i, outcome) in result.outcomes.iter().enumerate() {
        if let Outcome::Labeled { corner, rect } = outcome {
            let p = result.projected[i];
            // `left + width` need not round back to the point exactly.
            let touches = rect.corners().iter().any(|&(cx, cy)| {
                (cx - p.x).abs() <= 1e-9 * p.x.abs().max(1.0) && (cy - p.y).abs() <= 1e-9 * p.y.abs().max(1.0)
            });
            let anchored = *rect == corner.rect(p.x, p.y, result.dims) && touches;
            if !anchored {
                out.push(Violation::NotAnchored { feature: i as u32 });
            }
        }
    }
}

/// Every candidate of an all-occluded feature must strictly intersect some
/// higher-priority selected label, unless the feature is an anomaly.
fn check_priority_guarantee(result: &PlacementResult, out: &mut Vec<Violation>) {
    let (points, grid) = grid_for(result);
    let chosen = result.chosen();
    let dims = result.conflict_dims;
    let flagged = metrics::anomalies(result);
    if flagged.len() != result.anomaly_count {
        out.push(Violation::AnomalyCount { stored: result.anomaly_count, recounted: flagged.len() });
    }
    for (a, &(x, y)) in points.iter().enumerate() {
        let input = result.order[a];
        match result.outcomes[input as usize] {
            Outcome::Labeled { .. } => continue,
            Outcome::Unlabeled(UnlabeledReason::AllOccluded) => {}
            Outcome::Unlabeled(reason) => {
                out.push(Violation::WrongReason { feature: input, reason });
                continue;
            }
        }
        if flagged.binary_search(&(a as u32)).is_ok() {
            continue;
        }
        let Some((col, row)) = grid.cell_of(a as u32) else { continue };
        let blockers: Vec<_> = window(&grid, col, row, 4)
            .filter(|&b| (b as usize) < a)
            .filter_map(|b| chosen[b as usize].map(|c| c.rect(points[b as usize].0, points[b as usize].1, dims)))
            .collect();
        for (i, cand) in candidate_rects(x, y, dims).iter().enumerate() {
            if !blockers.iter().any(|r| rects_intersect_strict(cand, r)) {
                out.push(Violation::Unexplained { feature: input, corner: Corner::from_index(i as u8).unwrap() });
            }
        }
    }
}

fn window(grid: &Trellis, col: u32, row: u32, reach: u32) -> impl Iterator<Item = u32> + '_ {
    let rows = row.saturating_sub(reach)..=(row + reach).min(grid.n_rows - 1);
    rows.flat_map(move |r| {
        let cols = col.saturating_sub(reach)..=(col + reach).min(grid.n_cols - 1);
        cols.flat_map(move |c| grid.cell(c, r).iter().copied())
    })
}
