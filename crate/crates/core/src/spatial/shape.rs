use serde::{Deserialize, Serialize};

use super::{centroid, local_coords, size_metrics, vector_bearing, Bearing, SpatialError};
use crate::model::{Crs, Geometry, GeometryKind, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeKind {
    Point,
    Segment,
    Triangle,
    Rectangle,
    Square,
    RegularPolygon,
    CircleLike,
    Irregular,
}

impl ShapeKind {
    pub fn word(self) -> &'static str {
        match self {
            ShapeKind::Point => "point",
            ShapeKind::Segment => "straight line",
            ShapeKind::Triangle => "triangle",
            ShapeKind::Rectangle => "rectangle",
            ShapeKind::Square => "square",
            ShapeKind::RegularPolygon => "regular polygon",
            ShapeKind::CircleLike => "circle",
            ShapeKind::Irregular => "irregular shape",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShapeClass {
    pub class: ShapeKind,
    /// Vertices left after removing collinear ones (no closing duplicate).
    pub vertex_count: usize,
    /// Edge lengths in meters of the geometry as given.
    pub edge_lengths: Vec<f64>,
    /// Long side over short side of the minimum-area bounding rectangle;
    /// 1 for points and lines of zero width.
    pub aspect_ratio: f64,
}

const RIGHT_ANGLE_TOLERANCE_DEG: f64 = 10.0;
const SQUARE_SIDE_RATIO: f64 = 1.05;
const REGULAR_VARIATION: f64 = 0.05;
const CIRCLE_RADIAL_DEVIATION: f64 = 0.05;

fn sub(a: Point, b: Point) -> Point {
    Point::new(a.x - b.x, a.y - b.y)
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn norm(a: Point) -> f64 {
    a.x.hypot(a.y)
}

/// Drops vertices lying on the straight line through their neighbours. For
/// rings (`closed`), the first vertex may be dropped too.
pub fn remove_collinear(vertices: &[Point], closed: bool) -> Vec<Point> {
    let mut v = vertices.to_vec();
    loop {
        let n = v.len();
        let min = if closed { 3 } else { 2 };
        if n <= min {
            return v;
        }
        let range: Vec<usize> = if closed { (0..n).collect() } else { (1..n - 1).collect() };
        let found = range.into_iter().find(|&i| {
            let prev = v[(i + n - 1) % n];
            let next = v[(i + 1) % n];
            let (a, b) = (sub(v[i], prev), sub(next, v[i]));
            cross(a, b).abs() <= 1e-12 * norm(a) * norm(b) && a.x * b.x + a.y * b.y > 0.0
        });
        match found {
            Some(i) => {
                v.remove(i);
            }
            None => return v,
        }
    }
}

/// Andrew's monotone chain; counter-clockwise, no repeated closing vertex.
pub fn convex_hull(points: &[Point]) -> Vec<Point> {
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point> = Vec::with_capacity(pts.len() * 2);
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
                if cross(sub(b, a), sub(p, a)) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Minimum-area bounding rectangle over the hull edges: (long-axis unit
/// vector, long side, short side).
fn min_area_rect(points: &[Point]) -> (Point, f64, f64) {
    let hull = convex_hull(points);
    if hull.len() < 2 {
        return (Point::new(0.0, 1.0), 0.0, 0.0);
    }
    let mut best: Option<(f64, Point, f64, f64)> = None;
    for i in 0..hull.len() {
        let e = sub(hull[(i + 1) % hull.len()], hull[i]);
        let len = norm(e);
        if len == 0.0 {
            continue;
        }
        let u = Point::new(e.x / len, e.y / len);
        let v = Point::new(-u.y, u.x);
        let (mut umin, mut umax, mut vmin, mut vmax) =
            (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for p in &hull {
            let pu = p.x * u.x + p.y * u.y;
            let pv = p.x * v.x + p.y * v.y;
            umin = umin.min(pu);
            umax = umax.max(pu);
            vmin = vmin.min(pv);
            vmax = vmax.max(pv);
        }
        let (w, h) = (umax - umin, vmax - vmin);
        let area = w * h;
        if best.is_none_or(|b| area < b.0 * (1.0 - 1e-12)) {
            let (axis, long, short) = if w >= h { (u, w, h) } else { (v, h, w) };
            best = Some((area, axis, long, short));
        }
    }
    let (_, axis, long, short) = best.expect("hull has a non-degenerate edge");
    (axis, long, short)
}

fn relative_spread(values: &[f64]) -> f64 {
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = values.iter().cloned().fold(f64::INFINITY, f64::min);
    if mean == 0.0 {
        0.0
    } else {
        (max - min) / mean
    }
}

fn interior_angles(ring: &[Point]) -> Vec<f64> {
    let n = ring.len();
    (0..n)
        .map(|i| {
            let prev = ring[(i + n - 1) % n];
            let next = ring[(i + 1) % n];
            let a = sub(prev, ring[i]);
            let b = sub(next, ring[i]);
            let cos = (a.x * b.x + a.y * b.y) / (norm(a) * norm(b));
            cos.clamp(-1.0, 1.0).acos().to_degrees()
        })
        .collect()
}

fn side_lengths(ring: &[Point]) -> Vec<f64> {
    let n = ring.len();
    (0..n).map(|i| norm(sub(ring[(i + 1) % n], ring[i]))).collect()
}

fn classify_ring(ring: &[Point]) -> ShapeKind {
    let n = ring.len();
    match n {
        3 => ShapeKind::Triangle,
        4 => {
            let right = interior_angles(ring)
                .iter()
                .all(|a| (a - 90.0).abs() <= RIGHT_ANGLE_TOLERANCE_DEG);
            if !right {
                return ShapeKind::Irregular;
            }
            let sides = side_lengths(ring);
            let max = sides.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let min = sides.iter().cloned().fold(f64::INFINITY, f64::min);
            if max / min <= SQUARE_SIDE_RATIO {
                ShapeKind::Square
            } else {
                ShapeKind::Rectangle
            }
        }
        5..=8 => {
            if relative_spread(&side_lengths(ring)) <= REGULAR_VARIATION
                && relative_spread(&interior_angles(ring)) <= REGULAR_VARIATION
            {
                ShapeKind::RegularPolygon
            } else {
                ShapeKind::Irregular
            }
        }
        _ => {
            let c = centroid(&Geometry {
                kind: GeometryKind::Polygon,
                coords: ring.iter().copied().chain(std::iter::once(ring[0])).collect(),
            });
            let radii: Vec<f64> = ring.iter().map(|&p| norm(sub(p, c))).collect();
            let mean = radii.iter().sum::<f64>() / n as f64;
            let deviation = radii.iter().map(|r| (r - mean).abs()).fold(0.0, f64::max);
            if mean > 0.0 && deviation <= CIRCLE_RADIAL_DEVIATION * mean {
                ShapeKind::CircleLike
            } else {
                ShapeKind::Irregular
            }
        }
    }
}

/// Shape class computed in meters (geographic input is projected locally),
/// so every tolerance is relative and the result is invariant under rigid
/// motion and uniform scaling.
pub fn classify_shape(g: &Geometry, crs: Crs) -> ShapeClass {
    let local = local_coords(g, crs);
    let edge_lengths = size_metrics(g, crs).edge_lengths;
    let (class, vertex_count) = match g.kind {
        GeometryKind::Point => (ShapeKind::Point, 1),
        GeometryKind::Polyline => {
            let v = remove_collinear(&local, false);
            let kind = if v.len() == 2 {
                ShapeKind::Segment
            } else {
                ShapeKind::Irregular
            };
            (kind, v.len())
        }
        GeometryKind::Polygon => {
            let ring = remove_collinear(&local[..local.len() - 1], true);
            (classify_ring(&ring), ring.len())
        }
    };
    let aspect_ratio = match g.kind {
        GeometryKind::Point => 1.0,
        _ => {
            let (_, long, short) = min_area_rect(&local);
            if short > 0.0 {
                long / short
            } else {
                1.0
            }
        }
    };
    ShapeClass {
        class,
        vertex_count,
        edge_lengths,
        aspect_ratio,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrientationInfo {
    /// Long axis of the minimum-area bounding rectangle, in `[0, 180)`.
    pub principal_bearing: Bearing,
    /// Triangles: from the centroid toward the apex, the vertex where the
    /// two longer sides meet.
    pub facing: Option<Bearing>,
}

pub fn orientation(g: &Geometry, crs: Crs) -> Result<OrientationInfo, SpatialError> {
    if g.kind == GeometryKind::Point {
        return Err(SpatialError::NoOrientation);
    }
    let local = local_coords(g, crs);
    let (axis, _, _) = min_area_rect(&local);
    let principal_bearing = vector_bearing(axis.x, axis.y).axis();
    let facing = if g.kind == GeometryKind::Polygon {
        let ring = remove_collinear(&local[..local.len() - 1], true);
        if ring.len() == 3 {
            let sides = side_lengths(&ring);
            // side i joins vertex i and i+1; the opposite vertex is i+2
            let shortest = (0..3)
                .min_by(|&a, &b| sides[a].total_cmp(&sides[b]))
                .expect("three sides");
            let apex = ring[(shortest + 2) % 3];
            let c = Point::new(
                ring.iter().map(|p| p.x).sum::<f64>() / 3.0,
                ring.iter().map(|p| p.y).sum::<f64>() / 3.0,
            );
            Some(vector_bearing(apex.x - c.x, apex.y - c.y))
        } else {
            None
        }
    } else {
        None
    };
    Ok(OrientationInfo {
        principal_bearing,
        facing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spatial::{quantize_clock, ClockResolution};

    fn poly(pts: &[(f64, f64)]) -> Geometry {
        Geometry::polygon(pts.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    #[test]
    fn square_and_triangle() {
        let sq = Geometry::rect(0.0, 0.0, 10.0, 10.0).unwrap();
        let c = classify_shape(&sq, Crs::PlanarMeters);
        assert_eq!(c.class, ShapeKind::Square);
        assert_eq!(c.edge_lengths, vec![10.0; 4]);
        let tri = poly(&[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(classify_shape(&tri, Crs::PlanarMeters).class, ShapeKind::Triangle);
    }

    #[test]
    fn collinear_vertices_are_ignored() {
        let sq = poly(&[(0.0, 0.0), (5.0, 0.0), (10.0, 0.0), (10.0, 10.0), (0.0, 10.0)]);
        let c = classify_shape(&sq, Crs::PlanarMeters);
        assert_eq!(c.class, ShapeKind::Square);
        assert_eq!(c.vertex_count, 4);
    }

    #[test]
    fn rectangle_orientation() {
        let r = Geometry::rect(0.0, 0.0, 10.0, 2.0).unwrap();
        assert_eq!(classify_shape(&r, Crs::PlanarMeters).class, ShapeKind::Rectangle);
        let o = orientation(&r, Crs::PlanarMeters).unwrap();
        assert!((o.principal_bearing.degrees() - 90.0).abs() < 1e-9);
        assert!(o.facing.is_none());
    }

    #[test]
    fn triangle_facing_eleven_o_clock() {
        // isoceles, long sides meet at the apex 330 degrees from the centroid
        let theta = 330f64.to_radians();
        let (ux, uy) = (theta.sin(), theta.cos());
        let (px, py) = (-uy, ux);
        let apex = (ux * 30.0, uy * 30.0);
        let b1 = (px * 5.0, py * 5.0);
        let b2 = (-px * 5.0, -py * 5.0);
        let tri = poly(&[b1, apex, b2]);
        let o = orientation(&tri, Crs::PlanarMeters).unwrap();
        let facing = o.facing.unwrap();
        assert!((facing.degrees() - 330.0).abs() < 1e-6, "{}", facing.degrees());
        assert_eq!(quantize_clock(facing, ClockResolution::Hour).to_string(), "11 o'clock");
    }

    #[test]
    fn hull_of_square_with_interior_point() {
        let pts = [
            Point::new(0.0, 0.0),
            Point::new(1.0, 0.0),
            Point::new(1.0, 1.0),
            Point::new(0.0, 1.0),
            Point::new(0.5, 0.5),
        ];
        assert_eq!(convex_hull(&pts).len(), 4);
    }

    #[test]
    fn point_has_no_orientation() {
        assert_eq!(
            orientation(&Geometry::point(0.0, 0.0), Crs::PlanarMeters),
            Err(SpatialError::NoOrientation)
        );
    }
}
