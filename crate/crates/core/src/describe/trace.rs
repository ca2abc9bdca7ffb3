use serde::Serialize;

use super::format::{article, format_length};
use crate::model::{Crs, Extent, Geometry, GeometryKind, Point};
use crate::spatial::{
    local_coords, point_segment_distance, quantize_cardinal, quantize_clock, vector_bearing, Bearing, Cardinal,
    ClockPhrase, ClockResolution,
};

/// Simplification tolerance as a fraction of the bounding-box diagonal.
pub const TRACE_TOLERANCE_FRACTION: f64 = 0.02;

/// Douglas–Peucker simplification; returns the indices of retained points
/// in order. Both endpoints are always kept. A closed path (first equals
/// last) splits at the point farthest from its start.
pub fn douglas_peucker(points: &[Point], tolerance: f64) -> Vec<usize> {
    let n = points.len();
    if n <= 2 {
        return (0..n).collect();
    }
    let mut keep = vec![false; n];
    keep[0] = true;
    keep[n - 1] = true;
    let mut stack = vec![(0, n - 1)];
    while let Some((lo, hi)) = stack.pop() {
        let mut best = (0.0, 0);
        for i in lo + 1..hi {
            let d = point_segment_distance(points[i], points[lo], points[hi]);
            if d > best.0 {
                best = (d, i);
            }
        }
        if best.0 > tolerance {
            keep[best.1] = true;
            stack.push((lo, best.1));
            stack.push((best.1, hi));
        }
    }
    (0..n).filter(|&i| keep[i]).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceClause {
    pub length_m: f64,
    pub bearing: Bearing,
    pub clock: ClockPhrase,
    pub cardinal: Cardinal,
}

impl TraceClause {
    pub fn text(&self) -> String {
        let clock = self.clock.to_string();
        format!(
            "{} {} at {} {clock} slope",
            format_length(self.length_m),
            self.cardinal,
            article(&clock)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundaryTrace {
    pub clauses: Vec<TraceClause>,
    /// Retained vertices in meters, in walking order.
    pub simplified: Vec<Point>,
}

impl BoundaryTrace {
    pub fn text(&self) -> String {
        self.clauses
            .iter()
            .map(TraceClause::text)
            .collect::<Vec<_>>()
            .join(", then ")
    }

    pub fn simplified_length(&self) -> f64 {
        self.simplified
            .windows(2)
            .map(|w| (w[1].x - w[0].x).hypot(w[1].y - w[0].y))
            .sum()
    }
}

/// Index of the northernmost vertex, ties broken westernmost.
pub fn northernmost(points: &[Point]) -> usize {
    let mut best = 0;
    for (i, p) in points.iter().enumerate() {
        let b = points[best];
        if p.y > b.y || (p.y == b.y && p.x < b.x) {
            best = i;
        }
    }
    best
}

/// The walking path a trace follows, in meters: polygons counter-clockwise
/// from the northernmost vertex back to it, lines from their first vertex.
pub fn trace_path(g: &Geometry, crs: Crs) -> Vec<Point> {
    let local = local_coords(g, crs);
    match g.kind {
        GeometryKind::Polygon => {
            let ring = &local[..local.len() - 1];
            let start = northernmost(ring);
            let mut path: Vec<Point> = ring[start..].iter().chain(ring[..start].iter()).copied().collect();
            path.push(ring[start]);
            path
        }
        _ => local,
    }
}

/// Describes a boundary (or line) as a sequence of straight runs after
/// simplification at 2% of the bounding-box diagonal.
pub fn trace_boundary(g: &Geometry, crs: Crs) -> BoundaryTrace {
    let path = trace_path(g, crs);
    let diagonal = Extent::of_points(&path).map_or(0.0, |e| e.diagonal());
    let kept: Vec<Point> = douglas_peucker(&path, TRACE_TOLERANCE_FRACTION * diagonal)
        .into_iter()
        .map(|i| path[i])
        .collect();
    let clauses = kept
        .windows(2)
        .filter(|w| w[0] != w[1])
        .map(|w| {
            let bearing = vector_bearing(w[1].x - w[0].x, w[1].y - w[0].y);
            TraceClause {
                length_m: (w[1].x - w[0].x).hypot(w[1].y - w[0].y),
                bearing,
                clock: quantize_clock(bearing, ClockResolution::HalfHour),
                cardinal: quantize_cardinal(bearing),
            }
        })
        .collect();
    BoundaryTrace {
        clauses,
        simplified: kept,
    }
}
