//! Real-time point-feature label placement.
//!
//! Every feature gets four corner-anchored label candidates. A screen-space
//! grid of quarter-label cells (the trellis) bounds the conflict search to a
//! 9x9 neighborhood, and a fixed per-cell decision tree of at most two
//! coordinate comparisons replaces rectangle intersection tests. A greedy
//! pass in descending priority then keeps the least expensive live candidate
//! of each feature and occludes its conflict partners.
//!
//! ```
//! use labelgrid::{EngineOptions, Feature, LabelDims, Labeler, Viewport};
//!
//! let features = vec![
//!     Feature::new(0, 1, 0.50, 0.50, "alpha"),
//!     Feature::new(1, 2, 0.52, 0.51, "beta"),
//! ];
//! let labeler = Labeler::new(LabelDims::new(60.0, 12.0).unwrap(), EngineOptions::default()).unwrap();
//! let result = labeler.label(&features, &Viewport::identity(800, 600).unwrap());
//! assert_eq!(result.labels_placed, 2);
//! ```

pub mod bench;
pub mod cost;
pub mod datasets;
pub mod error;
pub mod io;
pub mod metrics;
pub mod model;
pub mod oracle;
pub mod select;
pub mod service;
pub mod trellis;
pub mod validate;

pub use error::{Error, Result};
pub use model::{
    candidate_rects, world_to_screen, CandidateState, Corner, EngineOptions, Feature, LabelCandidate, LabelDims,
    Partner, Projected, Rect, Viewport,
};
pub use select::{Labeler, Outcome, PlacementResult, UnlabeledReason};
pub use trellis::{ConfigCode, NeighborhoodTestTable, Trellis};
