//! Domain types and screen-space conventions.
//!
//! Screen coordinates grow right and down, so an "upper" candidate has the
//! smaller `top`. Candidate indices are fixed: 0 = lower-left,
//! 1 = upper-left, 2 = lower-right, 3 = upper-right.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A prioritized point to be labeled. `rank` 1 is the highest priority.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Feature {
    pub id: u32,
    pub rank: u32,
    pub world_x: f64,
    pub world_y: f64,
    pub primary_text: String,
    pub secondary_text: Option<String>,
    pub data_value: Option<f64>,
}

impl Feature {
    pub fn new(id: u32, rank: u32, world_x: f64, world_y: f64, text: impl Into<String>) -> Self {
        Feature { id, rank, world_x, world_y, primary_text: text.into(), secondary_text: None, data_value: None }
    }
}

/// Axis-aligned rectangle in screen pixels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub left: f64,
    pub top: f64,
    pub width: f64,
    pub height: f64,
}

impl Rect {
    pub fn new(left: f64, top: f64, width: f64, height: f64) -> Self {
        Rect { left, top, width, height }
    }

    #[inline]
    pub fn right(&self) -> f64 {
        self.left + self.width
    }

    #[inline]
    pub fn bottom(&self) -> f64 {
        self.top + self.height
    }

    /// True when `(x, y)` lies strictly inside, not on the boundary.
    #[inline]
    pub fn contains_strict(&self, x: f64, y: f64) -> bool {
        x > self.left && x < self.right() && y > self.top && y < self.bottom()
    }

    pub fn corners(&self) -> [(f64, f64); 4] {
        [(self.left, self.top), (self.right(), self.top), (self.left, self.bottom()), (self.right(), self.bottom())]
    }
}

/// Uniform label size in pixels. Fractional sizes are allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LabelDims {
    pub width: f64,
    pub height: f64,
}

impl LabelDims {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
            return Err(Error::InvalidDims { width, height });
        }
        Ok(LabelDims { width, height })
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        LabelDims::new(self.width * factor, self.height * factor)
    }
}

/// The screen window onto the unit world square.
///
/// `screen = (world - pan) * zoom * (width_px, height_px)`; zoom 1 with zero
/// pan maps the unit square onto the whole window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport {
    #[serde(rename = "width")]
    pub width_px: u32,
    #[serde(rename = "height")]
    pub height_px: u32,
    pub pan_x: f64,
    pub pan_y: f64,
    pub zoom: f64,
}

impl Viewport {
    pub fn new(width_px: u32, height_px: u32, pan_x: f64, pan_y: f64, zoom: f64) -> Result<Self> {
        if width_px == 0 || height_px == 0 {
            return Err(Error::InvalidViewport(format!(
                "width and height must be positive, got {width_px}x{height_px}"
            )));
        }
        if !(zoom.is_finite() && zoom > 0.0) {
            return Err(Error::InvalidViewport(format!("zoom must be positive, got {zoom}")));
        }
        if !(pan_x.is_finite() && pan_y.is_finite()) {
            return Err(Error::InvalidViewport("pan must be finite".into()));
        }
        Ok(Viewport { width_px, height_px, pan_x, pan_y, zoom })
    }

    pub fn identity(width_px: u32, height_px: u32) -> Result<Self> {
        Viewport::new(width_px, height_px, 0.0, 0.0, 1.0)
    }

    pub fn screen_to_world(&self, x: f64, y: f64) -> (f64, f64) {
        (x / (self.zoom * self.width_px as f64) + self.pan_x, y / (self.zoom * self.height_px as f64) + self.pan_y)
    }
}

/// A feature's screen position and whether it falls inside the window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Projected {
    pub x: f64,
    pub y: f64,
    pub on_screen: bool,
}

pub fn world_to_screen(f: &Feature, v: &Viewport) -> Projected {
    let x = (f.world_x - v.pan_x) * v.zoom * v.width_px as f64;
    let y = (f.world_y - v.pan_y) * v.zoom * v.height_px as f64;
    let on_screen = x >= 0.0 && x < v.width_px as f64 && y >= 0.0 && y < v.height_px as f64;
    Projected { x, y, on_screen }
}

/// Candidate position relative to its feature point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[repr(u8)]
pub enum Corner {
    LowerLeft = 0,
    UpperLeft = 1,
    LowerRight = 2,
    UpperRight = 3,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::LowerLeft, Corner::UpperLeft, Corner::LowerRight, Corner::UpperRight];

    pub fn from_index(index: u8) -> Option<Corner> {
        Corner::ALL.get(index as usize).copied()
    }

    pub fn index(self) -> u8 {
        self as u8
    }

    pub fn from_sides(left: bool, upper: bool) -> Corner {
        match (left, upper) {
            (true, false) => Corner::LowerLeft,
            (true, true) => Corner::UpperLeft,
            (false, false) => Corner::LowerRight,
            (false, true) => Corner::UpperRight,
        }
    }

    /// The label extends left of the feature point.
    pub fn is_left(self) -> bool {
        matches!(self, Corner::LowerLeft | Corner::UpperLeft)
    }

    /// The label extends above the feature point (smaller screen y).
    pub fn is_upper(self) -> bool {
        matches!(self, Corner::UpperLeft | Corner::UpperRight)
    }

    pub fn rect(self, x: f64, y: f64, dims: LabelDims) -> Rect {
        let left = if self.is_left() { x - dims.width } else { x };
        let top = if self.is_upper() { y - dims.height } else { y };
        Rect::new(left, top, dims.width, dims.height)
    }
}

/// The four candidate rectangles around `(x, y)`, indexed by [`Corner`].
pub fn candidate_rects(x: f64, y: f64, dims: LabelDims) -> [Rect; 4] {
    Corner::ALL.map(|c| c.rect(x, y, dims))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateState {
    Live,
    Selected,
    Deselected,
    Occluded,
}

/// A conflict partner: candidate `candidate` of the feature at processing
/// position `feature`, `radial_distance` cells away (Chebyshev, capped at 4).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partner {
    pub feature: u32,
    pub candidate: u8,
    pub radial_distance: u8,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LabelCandidate {
    pub owner: u32,
    pub corner: Corner,
    pub rect: Rect,
    pub state: CandidateState,
    pub value: f64,
    pub conflict_partners: Vec<Partner>,
}

impl LabelCandidate {
    pub fn is_live(&self) -> bool {
        self.state == CandidateState::Live
    }
}

/// Tuning knobs for a labeling run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineOptions {
    /// Only the features ranked `1..=threshold` are labeled.
    pub threshold: Option<u32>,
    /// Shrinks the conflict footprint of every label by this percentage per
    /// axis, letting labels overlap by that much.
    pub allowed_overlap_pct: f64,
    pub prox_weight: f64,
    /// Tie-break order for equally expensive candidates, most preferred first.
    pub preference_order: [u8; 4],
    /// Spread base values super-linearly toward high priorities.
    pub spread_values: bool,
    /// Skip neighbors of higher priority during traversal.
    pub skip_higher_priority: bool,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            threshold: None,
            allowed_overlap_pct: 0.0,
            prox_weight: 0.5,
            preference_order: [3, 2, 1, 0],
            spread_values: true,
            skip_higher_priority: true,
        }
    }
}

impl EngineOptions {
    pub fn validate(&self) -> Result<()> {
        if self.threshold == Some(0) {
            return Err(Error::InvalidOptions("threshold must be at least 1".into()));
        }
        if !(self.allowed_overlap_pct.is_finite() && (0.0..100.0).contains(&self.allowed_overlap_pct)) {
            return Err(Error::InvalidOptions(format!(
                "allowed_overlap_pct must be in [0, 100), got {}",
                self.allowed_overlap_pct
            )));
        }
        if !(self.prox_weight.is_finite() && self.prox_weight >= 0.0) {
            return Err(Error::InvalidOptions(format!("prox_weight must be non-negative, got {}", self.prox_weight)));
        }
        let mut seen = [false; 4];
        for &i in &self.preference_order {
            if i > 3 || std::mem::replace(&mut seen[i as usize], true) {
                return Err(Error::InvalidOptions(format!(
                    "preference_order must be a permutation of 0..=3, got {:?}",
                    self.preference_order
                )));
            }
        }
        Ok(())
    }

    /// Label dims used for conflict geometry once the overlap allowance is applied.
    pub fn conflict_dims(&self, dims: LabelDims) -> LabelDims {
        let keep = 1.0 - self.allowed_overlap_pct / 100.0;
        LabelDims { width: dims.width * keep, height: dims.height * keep }
    }
}
