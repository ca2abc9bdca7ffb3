//! Geometric quantities behind the description and evaluation layers:
//! distance, direction, quantization, topology, shape, size, orientation
//! and graticule offsets. Everything here is a pure function.

mod direction;
mod graticule;
mod measure;
mod shape;
mod topology;

pub use direction::{quantize_cardinal, quantize_clock, Bearing, Cardinal, ClockPhrase, ClockResolution};
pub use graticule::{graticule_offsets, GraticuleOffset};
pub(crate) use measure::vector_bearing;
pub use measure::{
    bearing, centroid, haversine, local_coords, path_length, point_distance, size_metrics, LocalFrame, SizeMetrics,
};
pub use shape::{classify_shape, convex_hull, orientation, remove_collinear, OrientationInfo, ShapeClass, ShapeKind};
pub(crate) use topology::split_params;
pub use topology::{
    boundary_distance, closest_point, closest_point_on_segment, intersects, is_simple_ring, point_in_polygon,
    point_segment_distance, segment_distance, segments_intersect, tolerance, topology, TopoRelation,
};

use crate::model::{Crs, Geometry, GeometryKind};

/// Mean Earth radius used for all geographic computations.
pub const EARTH_RADIUS_M: f64 = 6_371_000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SpatialError {
    #[error("bearing between coincident points is undefined")]
    CoincidentPoints,
    #[error("a point has no orientation")]
    NoOrientation,
    #[error("no graticules to measure against")]
    EmptyGraticules,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DistanceMode {
    /// Between centroids; the figure used in description text.
    Centroid,
    /// Between the closest boundary points; 0 when the geometries intersect.
    NearestBoundary,
}

/// Distance in meters between two geometries of the same CRS.
pub fn distance(a: &Geometry, b: &Geometry, mode: DistanceMode, crs: Crs) -> f64 {
    match mode {
        DistanceMode::Centroid => point_distance(centroid(a), centroid(b), crs),
        DistanceMode::NearestBoundary => {
            if a.kind == GeometryKind::Point && b.kind == GeometryKind::Point {
                return point_distance(a.coords[0], b.coords[0], crs);
            }
            let all: Vec<_> = a.coords.iter().chain(b.coords.iter()).copied().collect();
            let frame = LocalFrame::around(crs, &all);
            let pa = Geometry {
                kind: a.kind,
                coords: frame.project_all(&a.coords),
            };
            let pb = Geometry {
                kind: b.kind,
                coords: frame.project_all(&b.coords),
            };
            if intersects(&pa, &pb, tolerance(&pa, &pb)) {
                0.0
            } else {
                boundary_distance(&pa, &pb)
            }
        }
    }
}
