//! Candidate values and expenses.
//!
//! Every candidate starts with its feature's spread value. The expense of a
//! candidate is the proximity-weighted sum of the current values of its live
//! conflict partners, and occluding a candidate moves its value onto the
//! surviving siblings.

use crate::model::{CandidateState, Partner};

/// Per-feature values indexed in ascending priority: index 0 is the lowest
/// priority feature.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueTable {
    pub base: Vec<f64>,
    pub value: Vec<f64>,
}

impl ValueTable {
    pub fn len(&self) -> usize {
        self.value.len()
    }

    pub fn is_empty(&self) -> bool {
        self.value.is_empty()
    }

    /// Value of the feature at processing position `pos`, where position 0
    /// is the highest priority.
    pub fn at_position(&self, pos: usize) -> f64 {
        self.value[self.value.len() - 1 - pos]
    }
}

/// `BASE(f_i) = i + 1`, `VALUE(f_0) = BASE(f_0)` and
/// `VALUE(f_i) = VALUE(f_{i-1}) + BASE(f_i) / n`.
pub fn spread_values(n: usize) -> ValueTable {
    let base: Vec<f64> = (1..=n).map(|b| b as f64).collect();
    let mut value = Vec::with_capacity(n);
    for (i, &b) in base.iter().enumerate() {
        let v = match i {
            0 => b,
            _ => value[i - 1] + b / n as f64,
        };
        value.push(v);
    }
    ValueTable { base, value }
}

/// Unspread values: each feature is worth its base value.
pub fn linear_values(n: usize) -> ValueTable {
    let base: Vec<f64> = (1..=n).map(|b| b as f64).collect();
    ValueTable { value: base.clone(), base }
}

/// `prox_weight * (5 - rad_dist)`: 2.5, 2.0, 1.5, 1.0, 0.5 at the default weight.
#[inline]
pub fn proximity_modifier(rad_dist: u8, prox_weight: f64) -> f64 {
    debug_assert!(rad_dist <= 4, "radial distance {rad_dist} outside the neighborhood");
    prox_weight * (5 - rad_dist) as f64
}

/// Sum over partners of `value * proximity_modifier`. `live_value` returns
/// the partner's current value, or `None` once it is no longer live.
///
/// Partners are summed in slice order, so callers that need reproducible
/// floating point totals keep the slice sorted.
pub fn candidate_expense<F>(partners: &[Partner], prox_weight: f64, mut live_value: F) -> f64
where
    F: FnMut(&Partner) -> Option<f64>,
{
    partners.iter().filter_map(|p| live_value(p).map(|v| v * proximity_modifier(p.radial_distance, prox_weight))).sum()
}

/// Adds the value of the just-occluded candidate `occluded` to every sibling
/// that is still live. `states` and `values` hold one feature's four
/// candidates.
pub fn boost_siblings(states: &[CandidateState; 4], values: &mut [f64; 4], occluded: usize) {
    let gained = values[occluded];
    for i in 0..4 {
        if i != occluded && states[i] == CandidateState::Live {
            values[i] += gained;
        }
    }
}
