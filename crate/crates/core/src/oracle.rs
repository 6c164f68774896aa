//! Brute-force ground truth.
//!
//! Builds the full conflict graph by testing all sixteen candidate pairs of
//! every feature pair with a strict rectangle intersection, and runs the
//! same greedy selection directly on that graph. Nothing here touches the
//! trellis, so it can be used to check it.

use std::collections::BTreeSet;

use crate::cost::{self, ValueTable};
use crate::model::{candidate_rects, CandidateState, Corner, EngineOptions, LabelDims, Partner, Rect};

/// Strict overlap test in y-down coordinates. Rectangles that only share an
/// edge or a corner do not intersect.
#[inline]
pub fn rects_intersect_strict(a: &Rect, b: &Rect) -> bool {
    a.left < b.right() && a.right() > b.left && a.top < b.bottom() && a.bottom() > b.top
}

/// Every `(a_candidate, b_candidate)` pair whose rectangles strictly
/// intersect, in ascending order.
pub fn candidate_pairs(a: (f64, f64), b: (f64, f64), dims: LabelDims) -> Vec<(u8, u8)> {
    let ra = candidate_rects(a.0, a.1, dims);
    let rb = candidate_rects(b.0, b.1, dims);
    let mut out = Vec::new();
    for (i, ri) in ra.iter().enumerate() {
        for (j, rj) in rb.iter().enumerate() {
            if rects_intersect_strict(ri, rj) {
                out.push((i as u8, j as u8));
            }
        }
    }
    out
}

/// Candidate-level conflict graph over features in processing order.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleConflictGraph {
    /// `adjacency[a][i]` lists `(b, j)` for every candidate `j` of feature
    /// `b` that strictly intersects candidate `i` of feature `a`, sorted.
    pub adjacency: Vec<[Vec<(u32, u8)>; 4]>,
}

impl OracleConflictGraph {
    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn conflicts(&self, a: u32, i: u8, b: u32, j: u8) -> bool {
        self.adjacency[a as usize][i as usize].binary_search(&(b, j)).is_ok()
    }

    /// All directed edges `(a, i, b, j)`.
    pub fn edges(&self) -> BTreeSet<(u32, u8, u32, u8)> {
        let mut out = BTreeSet::new();
        for (a, cands) in self.adjacency.iter().enumerate() {
            for (i, list) in cands.iter().enumerate() {
                for &(b, j) in list {
                    out.insert((a as u32, i as u8, b, j));
                }
            }
        }
        out
    }

    /// Edges toward lower-priority partners only (`b > a`).
    pub fn forward_edges(&self) -> BTreeSet<(u32, u8, u32, u8)> {
        self.edges().into_iter().filter(|&(a, _, b, _)| b > a).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.edges().iter().all(|&(a, i, b, j)| self.conflicts(b, j, a, i))
    }
}

/// O(n^2) construction over all feature pairs.
pub fn oracle_graph(points: &[(f64, f64)], dims: LabelDims) -> OracleConflictGraph {
    let rects: Vec<[Rect; 4]> = points.iter().map(|&(x, y)| candidate_rects(x, y, dims)).collect();
    let mut adjacency: Vec<[Vec<(u32, u8)>; 4]> = vec![Default::default(); points.len()];
    for a in 0..points.len() {
        for b in (a + 1)..points.len() {
            for i in 0..4 {
                for j in 0..4 {
                    if rects_intersect_strict(&rects[a][i], &rects[b][j]) {
                        adjacency[a][i].push((b as u32, j as u8));
                        adjacency[b][j].push((a as u32, i as u8));
                    }
                }
            }
        }
    }
    for cands in &mut adjacency {
        for list in cands.iter_mut() {
            list.sort_unstable();
        }
    }
    OracleConflictGraph { adjacency }
}

fn cell_of(p: (f64, f64), dims: LabelDims) -> (i64, i64) {
    ((p.0 / (dims.width / 2.0)).floor() as i64, (p.1 / (dims.height / 2.0)).floor() as i64)
}

/// Chebyshev distance between the quarter-label cells of two points, capped at 4.
pub fn radial_distance(a: (f64, f64), b: (f64, f64), dims: LabelDims) -> u8 {
    let (ca, cb) = (cell_of(a, dims), cell_of(b, dims));
    (ca.0 - cb.0).abs().max((ca.1 - cb.1).abs()).min(4) as u8
}

/// Greedy selection on the oracle graph: descending priority, cheapest live
/// candidate first, ties broken by `options.preference_order`, partners of
/// the winner occluded with sibling boosts. Returns the chosen corner per
/// processing position.
pub fn reference_select(
    graph: &OracleConflictGraph,
    points: &[(f64, f64)],
    dims: LabelDims,
    values: &ValueTable,
    options: &EngineOptions,
) -> Vec<Option<Corner>> {
    let n = graph.len();
    let mut state = vec![[CandidateState::Live; 4]; n];
    let mut value: Vec<[f64; 4]> = (0..n).map(|p| [values.at_position(p); 4]).collect();
    let mut chosen = vec![None; n];

    for a in 0..n {
        if state[a].iter().all(|s| *s == CandidateState::Occluded) {
            continue;
        }
        let mut expense = [f64::INFINITY; 4];
        for i in 0..4 {
            if state[a][i] != CandidateState::Live {
                continue;
            }
            let partners: Vec<Partner> = graph.adjacency[a][i]
                .iter()
                .map(|&(b, j)| Partner {
                    feature: b,
                    candidate: j,
                    radial_distance: radial_distance(points[a], points[b as usize], dims),
                })
                .collect();
            expense[i] = cost::candidate_expense(&partners, options.prox_weight, |p| {
                let (b, j) = (p.feature as usize, p.candidate as usize);
                (state[b][j] == CandidateState::Live).then_some(value[b][j])
            });
        }
        let mut best: Option<usize> = None;
        for &i in &options.preference_order {
            let i = i as usize;
            if state[a][i] == CandidateState::Live && best.is_none_or(|b| expense[i] < expense[b]) {
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
        for &(b, j) in &graph.adjacency[a][sel] {
            let (b, j) = (b as usize, j as usize);
            if state[b][j] != CandidateState::Live {
                continue;
            }
            state[b][j] = CandidateState::Occluded;
            cost::boost_siblings(&state[b], &mut value[b], j);
        }
    }
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dims() -> LabelDims {
        LabelDims::new(150.0, 12.0).unwrap()
    }

    fn overlap_area(a: &Rect, b: &Rect) -> f64 {
        let w = a.right().min(b.right()) - a.left.max(b.left);
        let h = a.bottom().min(b.bottom()) - a.top.max(b.top);
        w.max(0.0) * h.max(0.0)
    }

    #[test]
    fn identical_rects_intersect() {
        let r = Rect::new(1.0, 2.0, 3.0, 4.0);
        assert!(rects_intersect_strict(&r, &r));
    }

    #[test]
    fn shared_edges_do_not_intersect() {
        let a = Rect::new(0.0, 0.0, 10.0, 4.0);
        assert!(!rects_intersect_strict(&a, &Rect::new(10.0, 0.0, 10.0, 4.0)));
        assert!(!rects_intersect_strict(&a, &Rect::new(0.0, 4.0, 10.0, 4.0)));
        assert!(!rects_intersect_strict(&a, &Rect::new(10.0, 4.0, 10.0, 4.0)));
    }

    #[test]
    fn agrees_with_overlap_area() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20_000 {
            let mut r = || {
                Rect::new(
                    rng.random_range(0.0..20.0),
                    rng.random_range(0.0..20.0),
                    rng.random_range(0.1..10.0),
                    rng.random_range(0.1..10.0),
                )
            };
            let (a, b) = (r(), r());
            assert_eq!(rects_intersect_strict(&a, &b), overlap_area(&a, &b) > 0.0);
            assert_eq!(rects_intersect_strict(&a, &b), rects_intersect_strict(&b, &a));
        }
    }

    #[test]
    fn far_apart_features_never_conflict() {
        let g = oracle_graph(&[(100.0, 50.0), (100.0 + 3.0 * 150.0, 50.0)], dims());
        assert!(g.edges().is_empty());
    }

    #[test]
    fn coincident_features_conflict_on_the_diagonal() {
        // Identical points share only edges between differently oriented candidates.
        let pairs = candidate_pairs((300.0, 300.0), (300.0, 300.0), dims());
        assert_eq!(pairs, vec![(0, 0), (1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn near_features_conflict_on_nine_pairs() {
        // B slightly up-left of A: everything except A-right/B-left and A-lower/B-upper.
        let pairs = candidate_pairs((300.0, 300.0), (290.0, 298.0), dims());
        assert_eq!(pairs.len(), 9);
        assert_eq!(pairs, vec![(0, 0), (0, 2), (1, 0), (1, 1), (1, 2), (1, 3), (2, 2), (3, 2), (3, 3)]);
    }

    #[test]
    fn graph_is_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let pts: Vec<(f64, f64)> =
            (0..200).map(|_| (rng.random_range(0.0..770.0), rng.random_range(0.0..840.0))).collect();
        let g = oracle_graph(&pts, dims());
        assert!(!g.edges().is_empty());
        assert!(g.is_symmetric());
    }

    #[test]
    fn empty_graph_picks_upper_right_everywhere() {
        let pts = [(10.0, 10.0), (500.0, 500.0)];
        let g = oracle_graph(&pts, dims());
        let v = cost::spread_values(2);
        let got = reference_select(&g, &pts, dims(), &v, &EngineOptions::default());
        assert_eq!(got, vec![Some(Corner::UpperRight); 2]);
    }

    #[test]
    fn radial_distance_is_capped_chebyshev() {
        let d = dims();
        assert_eq!(radial_distance((0.0, 0.0), (74.0, 5.0), d), 0);
        assert_eq!(radial_distance((0.0, 0.0), (76.0, 5.0), d), 1);
        assert_eq!(radial_distance((0.0, 0.0), (76.0, 31.0), d), 4);
        assert_eq!(radial_distance((0.0, 0.0), (1000.0, 0.0), d), 4);
    }
}
