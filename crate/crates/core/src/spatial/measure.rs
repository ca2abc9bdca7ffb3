use serde::{Deserialize, Serialize};

use super::{Bearing, SpatialError, EARTH_RADIUS_M};
use crate::model::{signed_area_open, Crs, Geometry, GeometryKind, Point};

/// Great-circle distance in meters between two lon/lat points (haversine).
pub fn haversine(a: Point, b: Point) -> f64 {
    let (lat1, lat2) = (a.y.to_radians(), b.y.to_radians());
    let dlat = lat2 - lat1;
    let dlon = (b.x - a.x).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + lat1.cos() * lat2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_M * h.sqrt().min(1.0).asin()
}

/// Distance in meters between two points of the given CRS.
pub fn point_distance(a: Point, b: Point, crs: Crs) -> f64 {
    match crs {
        Crs::PlanarMeters => (b.x - a.x).hypot(b.y - a.y),
        Crs::GeographicDegrees => haversine(a, b),
    }
}

/// Planar bearing from `dx, dy`. The direction and its reverse are derived
/// from the same canonical half-plane vector, so that
/// `vector_bearing(-dx, -dy) == vector_bearing(dx, dy).opposite()` exactly.
pub(crate) fn vector_bearing(dx: f64, dy: f64) -> Bearing {
    let canonical = dx > 0.0 || (dx == 0.0 && dy > 0.0);
    let (cx, cy) = if canonical { (dx, dy) } else { (-dx, -dy) };
    let axis = Bearing::from_degrees(cx.atan2(cy).to_degrees());
    if canonical {
        axis
    } else {
        axis.opposite()
    }
}

/// Bearing from `from` to `to`: clockwise from +y on planar maps, the
/// initial great-circle bearing on geographic maps.
pub fn bearing(from: Point, to: Point, crs: Crs) -> Result<Bearing, SpatialError> {
    if from == to {
        return Err(SpatialError::CoincidentPoints);
    }
    Ok(match crs {
        Crs::PlanarMeters => vector_bearing(to.x - from.x, to.y - from.y),
        Crs::GeographicDegrees => {
            let (lat1, lat2) = (from.y.to_radians(), to.y.to_radians());
            let dlon = (to.x - from.x).to_radians();
            let y = dlon.sin() * lat2.cos();
            let x = lat1.cos() * lat2.sin() - lat1.sin() * lat2.cos() * dlon.cos();
            Bearing::from_degrees(y.atan2(x).to_degrees())
        }
    })
}

/// Equirectangular projection to meters around a reference latitude. Used
/// for shape-level computations on geographic maps; planar input is copied.
#[derive(Debug, Clone, Copy)]
pub struct LocalFrame {
    crs: Crs,
    origin: Point,
    cos_lat: f64,
}

impl LocalFrame {
    pub fn new(crs: Crs, origin: Point) -> Self {
        LocalFrame {
            crs,
            origin,
            cos_lat: origin.y.to_radians().cos(),
        }
    }

    pub fn around(crs: Crs, points: &[Point]) -> Self {
        let n = points.len().max(1) as f64;
        let origin = Point::new(
            points.iter().map(|p| p.x).sum::<f64>() / n,
            points.iter().map(|p| p.y).sum::<f64>() / n,
        );
        LocalFrame::new(crs, origin)
    }

    pub fn project(&self, p: Point) -> Point {
        match self.crs {
            Crs::PlanarMeters => p,
            Crs::GeographicDegrees => {
                let m_per_deg = EARTH_RADIUS_M * std::f64::consts::PI / 180.0;
                Point::new(
                    (p.x - self.origin.x) * m_per_deg * self.cos_lat,
                    (p.y - self.origin.y) * m_per_deg,
                )
            }
        }
    }

    pub fn project_all(&self, points: &[Point]) -> Vec<Point> {
        points.iter().map(|&p| self.project(p)).collect()
    }
}

/// Coordinates of `g` in meters (planar maps: unchanged).
pub fn local_coords(g: &Geometry, crs: Crs) -> Vec<Point> {
    LocalFrame::around(crs, g.vertices()).project_all(&g.coords)
}

/// Length of a coordinate path in meters.
pub fn path_length(coords: &[Point], crs: Crs) -> f64 {
    coords.windows(2).map(|w| point_distance(w[0], w[1], crs)).sum()
}

/// Point: the coordinate. Polyline: length-weighted mean of segment
/// midpoints. Polygon: area centroid.
pub fn centroid(g: &Geometry) -> Point {
    match g.kind {
        GeometryKind::Point => g.coords[0],
        GeometryKind::Polyline => {
            let mut total = 0.0;
            let (mut sx, mut sy) = (0.0, 0.0);
            for w in g.coords.windows(2) {
                let len = (w[1].x - w[0].x).hypot(w[1].y - w[0].y);
                total += len;
                sx += len * (w[0].x + w[1].x) / 2.0;
                sy += len * (w[0].y + w[1].y) / 2.0;
            }
            if total == 0.0 {
                g.coords[0]
            } else {
                Point::new(sx / total, sy / total)
            }
        }
        GeometryKind::Polygon => {
            let ring = g.vertices();
            let o = ring[0];
            let (mut a2, mut cx, mut cy) = (0.0, 0.0, 0.0);
            for i in 0..ring.len() {
                let p = Point::new(ring[i].x - o.x, ring[i].y - o.y);
                let q = ring[(i + 1) % ring.len()];
                let q = Point::new(q.x - o.x, q.y - o.y);
                let cross = p.x * q.y - q.x * p.y;
                a2 += cross;
                cx += (p.x + q.x) * cross;
                cy += (p.y + q.y) * cross;
            }
            if a2 == 0.0 {
                let n = ring.len() as f64;
                return Point::new(
                    ring.iter().map(|p| p.x).sum::<f64>() / n,
                    ring.iter().map(|p| p.y).sum::<f64>() / n,
                );
            }
            Point::new(o.x + cx / (3.0 * a2), o.y + cy / (3.0 * a2))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SizeMetrics {
    pub perimeter: f64,
    pub area: f64,
    pub edge_lengths: Vec<f64>,
    pub bbox_width: f64,
    pub bbox_height: f64,
    pub path_length: f64,
}

/// Spherical polygon area approximation (sum of longitude steps weighted by
/// the sines of the bounding latitudes).
fn spherical_area(ring: &[Point]) -> f64 {
    let n = ring.len();
    let mut total = 0.0;
    for i in 0..n {
        let p = ring[i];
        let q = ring[(i + 1) % n];
        total += (q.x - p.x).to_radians() * (2.0 + p.y.to_radians().sin() + q.y.to_radians().sin());
    }
    (total * EARTH_RADIUS_M * EARTH_RADIUS_M / 2.0).abs()
}

pub fn size_metrics(g: &Geometry, crs: Crs) -> SizeMetrics {
    let edge_lengths: Vec<f64> = match g.kind {
        GeometryKind::Point => Vec::new(),
        _ => g.coords.windows(2).map(|w| point_distance(w[0], w[1], crs)).collect(),
    };
    let total: f64 = edge_lengths.iter().sum();
    let local = local_coords(g, crs);
    let bbox = crate::model::Extent::of_points(&local).expect("geometry has coordinates");
    let (perimeter, path_length, area) = match g.kind {
        GeometryKind::Point => (0.0, 0.0, 0.0),
        GeometryKind::Polyline => (0.0, total, 0.0),
        GeometryKind::Polygon => {
            let area = match crs {
                Crs::PlanarMeters => signed_area_open(g.vertices()).abs(),
                Crs::GeographicDegrees => spherical_area(g.vertices()),
            };
            (total, 0.0, area)
        }
    };
    SizeMetrics {
        perimeter,
        area,
        edge_lengths,
        bbox_width: bbox.width(),
        bbox_height: bbox.height(),
        path_length,
    }
}
