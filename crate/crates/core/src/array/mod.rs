//! Uniform linear array model and far-field evaluation.
//!
//! Angles follow the array-axis convention: `theta` is measured from the
//! array axis, so broadside is 90 deg and `u = cos(theta)`. Public interfaces
//! take degrees; everything inside works in radians.

mod excitation;
mod geometry;
mod grid;
mod metrics;
mod pattern;

pub use excitation::{wrap_deg, Excitation};
pub use geometry::ArrayGeometry;
pub use grid::AngleGrid;
pub use metrics::{pattern_metrics, PatternMetrics, MAIN_LOBE_FLOOR_DB};
pub use pattern::{
    apply_steering, array_factor, evaluate_af, far_field, parseval_check, steering_phases,
    Pattern, PARSEVAL_NODES,
};
