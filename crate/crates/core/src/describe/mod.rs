//! Deterministic English rendering of spatial facts: landmark paragraphs,
//! pairwise survey sentences, route narratives, absolute locations and
//! boundary traces. Templates have a fixed clause order so that the text is
//! testable and byte-stable.

mod absolute;
pub mod format;
mod landmark;
mod pair;
mod route;
mod trace;

pub use absolute::describe_absolute;
pub use landmark::{describe_landmark, LandmarkDescription};
pub use pair::{describe_pair, PairStatement};
pub use route::{describe_route, EncounterKind, RouteDescription, RouteEncounter};
pub use trace::{
    douglas_peucker, northernmost, trace_boundary, trace_path, BoundaryTrace, TraceClause, TRACE_TOLERANCE_FRACTION,
};

use crate::spatial::ClockResolution;

/// Default half-width of the corridor around a route, in meters.
pub const DEFAULT_CORRIDOR_M: f64 = 15.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DescribeOptions {
    /// Clock resolution for directions between features.
    pub pair_clock: ClockResolution,
    /// Half-width in meters of the corridor within which features count as
    /// "along" a route.
    pub corridor_m: f64,
}

impl Default for DescribeOptions {
    fn default() -> Self {
        DescribeOptions {
            pair_clock: ClockResolution::Hour,
            corridor_m: DEFAULT_CORRIDOR_M,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DescribeError {
    #[error("the baseline map does not show coordinates")]
    CoordinatesNotShown,
}
