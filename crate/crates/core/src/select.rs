//! The greedy labeling pass.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::cost::{self, ValueTable};
use crate::error::Result;
use crate::metrics::{self, PhaseTimings};
use crate::model::{
    world_to_screen, CandidateState, Corner, EngineOptions, Feature, LabelCandidate, LabelDims, Partner, Projected,
    Rect, Viewport,
};
use crate::trellis::{NeighborhoodTestTable, Trellis};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UnlabeledReason {
    AllOccluded,
    BelowThreshold,
    OffScreen,
}

impl UnlabeledReason {
    pub fn as_str(self) -> &'static str {
        match self {
            UnlabeledReason::AllOccluded => "all-occluded",
            UnlabeledReason::BelowThreshold => "below-threshold",
            UnlabeledReason::OffScreen => "off-screen",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Labeled { corner: Corner, rect: Rect },
    Unlabeled(UnlabeledReason),
}

impl Outcome {
    pub fn corner(&self) -> Option<Corner> {
        match self {
            Outcome::Labeled { corner, .. } => Some(*corner),
            Outcome::Unlabeled(_) => None,
        }
    }

    pub fn rect(&self) -> Option<Rect> {
        match self {
            Outcome::Labeled { rect, .. } => Some(*rect),
            Outcome::Unlabeled(_) => None,
        }
    }
}

/// Features that take part in a run, highest priority first.
#[derive(Debug, Clone)]
pub struct Prepared {
    /// Input indices in processing order.
    pub order: Vec<u32>,
    /// Screen position per processing position.
    pub points: Vec<(f64, f64)>,
    /// Screen projection per input feature.
    pub projected: Vec<Projected>,
}

/// Projects the features and keeps the visible ones ranked within the
/// threshold, sorted by rank (input order breaks ties).
pub fn prepare(features: &[Feature], viewport: &Viewport, options: &EngineOptions) -> Prepared {
    let projected: Vec<Projected> = features.iter().map(|f| world_to_screen(f, viewport)).collect();
    let mut order: Vec<u32> = (0..features.len() as u32)
        .filter(|&i| {
            let f = &features[i as usize];
            projected[i as usize].on_screen && options.threshold.is_none_or(|t| f.rank <= t)
        })
        .collect();
    order.sort_by_key(|&i| (features[i as usize].rank, i));
    let points = order.iter().map(|&i| (projected[i as usize].x, projected[i as usize].y)).collect();
    Prepared { order, points, projected }
}

/// What the selection loop produced, per processing position.
#[derive(Debug, Clone)]
pub struct Selection {
    pub chosen: Vec<Option<Corner>>,
    pub candidates: Vec<LabelCandidate>,
    pub predicate_tests: u64,
    pub skipped_fully_occluded: usize,
}

/// Runs traversal and selection feature by feature in descending priority.
///
/// For each feature: skip it if every candidate is already occluded;
/// otherwise gather conflict partners from its neighborhood, keep the live
/// candidate with the smallest expense (ties go to the earliest entry of
/// `options.preference_order`), deselect its siblings and occlude every live
/// partner of the winner, boosting that partner's surviving siblings.
pub fn select_labels(
    points: &[(f64, f64)],
    trellis: &Trellis,
    table: &NeighborhoodTestTable,
    values: &ValueTable,
    options: &EngineOptions,
    render_dims: LabelDims,
) -> Selection {
    let n = points.len();
    // Hot state lives in compact per-feature arrays; the candidate records
    // are assembled once selection is done.
    let mut state = vec![[CandidateState::Live; 4]; n];
    let mut value: Vec<[f64; 4]> = (0..n).map(|p| [values.at_position(p); 4]).collect();
    let mut partners: Vec<[Vec<Partner>; 4]> = (0..n).map(|_| Default::default()).collect();

    let mut chosen = vec![None; n];
    let mut predicate_tests = 0;
    let mut skipped = 0;
    let mut scratch = Vec::new();
    let mut found: Vec<(u8, Partner)> = Vec::new();
    let live = |s: CandidateState| s == CandidateState::Live;

    for a in 0..n {
        if state[a].iter().all(|&s| s == CandidateState::Occluded) {
            skipped += 1;
            continue;
        }

        found.clear();
        predicate_tests += trellis.test_neighborhood_ordered(
            a as u32,
            points,
            table,
            options.skip_higher_priority,
            &mut scratch,
            |i, p| found.push((i, p)),
        );
        // Split by candidate with exact-size lists; order within each is kept.
        let mut counts = [0usize; 4];
        for &(i, _) in &found {
            counts[i as usize] += 1;
        }
        let lists = &mut partners[a];
        for (list, &count) in lists.iter_mut().zip(&counts) {
            list.reserve_exact(count);
        }
        for &(i, p) in &found {
            lists[i as usize].push(p);
        }

        let mut expense = [f64::INFINITY; 4];
        for i in 0..4 {
            if live(state[a][i]) {
                expense[i] = cost::candidate_expense(&partners[a][i], options.prox_weight, |p| {
                    let (b, j) = (p.feature as usize, p.candidate as usize);
                    live(state[b][j]).then_some(value[b][j])
                });
            }
        }
        let mut best: Option<usize> = None;
        for &i in &options.preference_order {
            let i = i as usize;
            if live(state[a][i]) && best.is_none_or(|b| expense[i] < expense[b]) {
                best = Some(i);
            }
        }
        let Some(sel) = best else { continue };

        for (i, s) in state[a].iter_mut().enumerate() {
            if *s == CandidateState::Live {
                *s = if i == sel { CandidateState::Selected } else { CandidateState::Deselected };
            }
        }
        chosen[a] = Corner::from_index(sel as u8);

        for p in &partners[a][sel] {
            let (b, j) = (p.feature as usize, p.candidate as usize);
            if !live(state[b][j]) {
                continue;
            }
            state[b][j] = CandidateState::Occluded;
            cost::boost_siblings(&state[b], &mut value[b], j);
        }
    }

    let mut candidates = Vec::with_capacity(4 * n);
    for (pos, lists) in partners.into_iter().enumerate() {
        let (x, y) = points[pos];
        for (i, list) in lists.into_iter().enumerate() {
            let corner = Corner::ALL[i];
            candidates.push(LabelCandidate {
                owner: pos as u32,
                corner,
                rect: corner.rect(x, y, render_dims),
                state: state[pos][i],
                value: value[pos][i],
                conflict_partners: list,
            });
        }
    }

    Selection { chosen, candidates, predicate_tests, skipped_fully_occluded: skipped }
}

/// Outcome of a labeling run over one viewport.
#[derive(Debug, Clone)]
pub struct PlacementResult {
    pub viewport: Viewport,
    pub dims: LabelDims,
    /// Dims used for conflict geometry after the overlap allowance.
    pub conflict_dims: LabelDims,
    pub options: EngineOptions,
    /// One entry per input feature.
    pub outcomes: Vec<Outcome>,
    pub projected: Vec<Projected>,
    /// Input indices of the processed features, highest priority first.
    pub order: Vec<u32>,
    pub features_processed: usize,
    pub labels_placed: usize,
    pub predicate_tests: u64,
    pub skipped_fully_occluded: usize,
    /// Features whose point is strictly covered by a lower-priority label.
    pub anomaly_count: usize,
    pub timings: PhaseTimings,
    /// Final candidate states, four per processing position.
    pub candidates: Vec<LabelCandidate>,
}

impl PlacementResult {
    pub fn anomaly_rate(&self) -> f64 {
        if self.features_processed == 0 {
            0.0
        } else {
            self.anomaly_count as f64 / self.features_processed as f64
        }
    }

    /// Selected corner per processing position.
    pub fn chosen(&self) -> Vec<Option<Corner>> {
        self.order.iter().map(|&i| self.outcomes[i as usize].corner()).collect()
    }

    /// Screen position per processing position.
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.order
            .iter()
            .map(|&i| {
                let p = self.projected[i as usize];
                (p.x, p.y)
            })
            .collect()
    }

    pub fn selected_rects(&self) -> Vec<(u32, Rect)> {
        self.outcomes.iter().enumerate().filter_map(|(i, o)| o.rect().map(|r| (i as u32, r))).collect()
    }
}

/// A configured engine. Cheap to share between threads; each call to
/// [`Labeler::label`] is an independent single-threaded run.
#[derive(Debug, Clone)]
pub struct Labeler {
    dims: LabelDims,
    options: EngineOptions,
    table: &'static NeighborhoodTestTable,
}

impl Labeler {
    pub fn new(dims: LabelDims, options: EngineOptions) -> Result<Labeler> {
        options.validate()?;
        Ok(Labeler { dims, options, table: NeighborhoodTestTable::builtin() })
    }

    pub fn dims(&self) -> LabelDims {
        self.dims
    }

    pub fn options(&self) -> &EngineOptions {
        &self.options
    }

    pub fn label(&self, features: &[Feature], viewport: &Viewport) -> PlacementResult {
        let conflict_dims = self.options.conflict_dims(self.dims);
        let prepared = prepare(features, viewport, &self.options);
        let n = prepared.points.len();
        let values = if self.options.spread_values { cost::spread_values(n) } else { cost::linear_values(n) };

        let start = Instant::now();
        let mut trellis = Trellis::new(viewport.width_px as f64, viewport.height_px as f64, conflict_dims);
        trellis.populate(&prepared.points);
        let populated = Instant::now();
        let selection = select_labels(&prepared.points, &trellis, self.table, &values, &self.options, self.dims);
        let done = Instant::now();
        let timings = PhaseTimings::from_instants(start, populated, done);

        let mut outcomes: Vec<Outcome> = features
            .iter()
            .zip(&prepared.projected)
            .map(|(f, p)| {
                if !p.on_screen {
                    Outcome::Unlabeled(UnlabeledReason::OffScreen)
                } else if self.options.threshold.is_some_and(|t| f.rank > t) {
                    Outcome::Unlabeled(UnlabeledReason::BelowThreshold)
                } else {
                    Outcome::Unlabeled(UnlabeledReason::AllOccluded)
                }
            })
            .collect();
        let mut labels_placed = 0;
        for (pos, corner) in selection.chosen.iter().enumerate() {
            if let Some(corner) = *corner {
                let (x, y) = prepared.points[pos];
                outcomes[prepared.order[pos] as usize] =
                    Outcome::Labeled { corner, rect: corner.rect(x, y, self.dims) };
                labels_placed += 1;
            }
        }

        let mut result = PlacementResult {
            viewport: *viewport,
            dims: self.dims,
            conflict_dims,
            options: self.options.clone(),
            outcomes,
            projected: prepared.projected,
            order: prepared.order,
            features_processed: n,
            labels_placed,
            predicate_tests: selection.predicate_tests,
            skipped_fully_occluded: selection.skipped_fully_occluded,
            anomaly_count: 0,
            timings,
            candidates: selection.candidates,
        };
        result.anomaly_count = metrics::anomaly_count(&result);
        result
    }
}
