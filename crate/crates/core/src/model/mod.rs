//! Baseline map data model.
//!
//! A [`MapDocument`] is the visual map a text representation is compared
//! against. It is built by [`parse_map`] from a GeoJSON feature collection,
//! normalized (polygons closed and counter-clockwise, identifiers assigned)
//! and then treated as immutable.

mod parse;
mod serialize;
mod validate;

use std::collections::BTreeMap;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

pub use parse::{parse_map, MapError};
pub use serialize::to_geojson;
pub use validate::{validate, Violation};

/// Coordinate reference mode of a map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Crs {
    /// Cartesian coordinates in meters, +y is north.
    PlanarMeters,
    /// Longitude/latitude in degrees on a sphere of [`crate::spatial::EARTH_RADIUS_M`].
    GeographicDegrees,
}

impl Crs {
    pub fn keyword(self) -> &'static str {
        match self {
            Crs::PlanarMeters => "planar",
            Crs::GeographicDegrees => "geographic",
        }
    }
}

/// A coordinate pair in CRS units. For geographic maps `x` is longitude and
/// `y` latitude, matching GeoJSON axis order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeometryKind {
    Point,
    Polyline,
    Polygon,
}

impl GeometryKind {
    pub fn word(self) -> &'static str {
        match self {
            GeometryKind::Point => "point",
            GeometryKind::Polyline => "line",
            GeometryKind::Polygon => "polygon",
        }
    }
}

/// A point, polyline or simple polygon.
///
/// Polygons are stored as a closed ring (first vertex repeated at the end)
/// wound counter-clockwise once normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    pub kind: GeometryKind,
    pub coords: Vec<Point>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("degenerate polygon: needs at least 3 distinct vertices enclosing a positive area")]
    DegeneratePolygon,
    #[error("degenerate line: needs at least 2 distinct vertices")]
    DegenerateLine,
    #[error("a point needs exactly one coordinate")]
    BadPoint,
    #[error("non-finite coordinate")]
    NonFinite,
}

impl Geometry {
    pub fn point(x: f64, y: f64) -> Self {
        Geometry {
            kind: GeometryKind::Point,
            coords: vec![Point::new(x, y)],
        }
    }

    pub fn polyline(coords: Vec<Point>) -> Result<Self, GeometryError> {
        Geometry {
            kind: GeometryKind::Polyline,
            coords,
        }
        .normalized()
    }

    pub fn polygon(coords: Vec<Point>) -> Result<Self, GeometryError> {
        Geometry {
            kind: GeometryKind::Polygon,
            coords,
        }
        .normalized()
    }

    /// Axis-aligned rectangle polygon.
    pub fn rect(min_x: f64, min_y: f64, max_x: f64, max_y: f64) -> Result<Self, GeometryError> {
        Geometry::polygon(vec![
            Point::new(min_x, min_y),
            Point::new(max_x, min_y),
            Point::new(max_x, max_y),
            Point::new(min_x, max_y),
        ])
    }

    /// Closes polygon rings, removes repeated vertices and winds polygons
    /// counter-clockwise. Idempotent.
    pub fn normalized(self) -> Result<Self, GeometryError> {
        if self.coords.iter().any(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        match self.kind {
            GeometryKind::Point => {
                if self.coords.len() != 1 {
                    return Err(GeometryError::BadPoint);
                }
                Ok(self)
            }
            GeometryKind::Polyline => {
                let coords = dedup_consecutive(self.coords);
                if coords.len() < 2 {
                    return Err(GeometryError::DegenerateLine);
                }
                Ok(Geometry {
                    kind: GeometryKind::Polyline,
                    coords,
                })
            }
            GeometryKind::Polygon => {
                let mut ring = dedup_consecutive(self.coords);
                while ring.len() > 1 && ring.first() == ring.last() {
                    ring.pop();
                }
                if ring.len() < 3 {
                    return Err(GeometryError::DegeneratePolygon);
                }
                let area = signed_area_open(&ring);
                if area == 0.0 || !area.is_finite() {
                    return Err(GeometryError::DegeneratePolygon);
                }
                if area < 0.0 {
                    ring[1..].reverse();
                }
                ring.push(ring[0]);
                Ok(Geometry {
                    kind: GeometryKind::Polygon,
                    coords: ring,
                })
            }
        }
    }

    /// Polygon vertices without the closing duplicate; other kinds unchanged.
    pub fn vertices(&self) -> &[Point] {
        match self.kind {
            GeometryKind::Polygon if self.coords.len() > 1 && self.coords.first() == self.coords.last() => {
                &self.coords[..self.coords.len() - 1]
            }
            _ => &self.coords,
        }
    }

    /// Consecutive coordinate pairs forming the geometry's boundary segments.
    /// A point yields one degenerate segment.
    pub fn segments(&self) -> Vec<(Point, Point)> {
        match self.kind {
            GeometryKind::Point => vec![(self.coords[0], self.coords[0])],
            _ => self.coords.windows(2).map(|w| (w[0], w[1])).collect(),
        }
    }
}

fn dedup_consecutive(mut coords: Vec<Point>) -> Vec<Point> {
    coords.dedup();
    coords
}

/// Shoelace signed area of an open ring (no closing vertex).
pub(crate) fn signed_area_open(ring: &[Point]) -> f64 {
    if ring.len() < 3 {
        return 0.0;
    }
    let o = ring[0];
    let mut twice = 0.0;
    for i in 1..ring.len() - 1 {
        let a = ring[i];
        let b = ring[i + 1];
        twice += (a.x - o.x) * (b.y - o.y) - (b.x - o.x) * (a.y - o.y);
    }
    twice / 2.0
}

/// Legend entry describing how features are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SensoryStyle {
    pub id: String,
    pub color_name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pattern: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub notes: Option<String>,
}

/// A thematic variable value.
#[derive(Debug, Clone, PartialEq)]
pub enum OverlaidValue {
    Number(f64),
    Category(String),
}

impl fmt::Display for OverlaidValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OverlaidValue::Number(n) => f.write_str(&format_data_number(*n)),
            OverlaidValue::Category(s) => f.write_str(s),
        }
    }
}

/// Data values are shown as given: integers without a fractional part,
/// other values in shortest round-trip form.
pub fn format_data_number(n: f64) -> String {
    if n.fract() == 0.0 && n.abs() < 1e15 {
        format!("{}", n as i64)
    } else {
        format!("{n}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Feature {
    pub id: String,
    pub name: String,
    pub type_label: String,
    pub geometry: Geometry,
    /// Legend style id.
    pub sensory: Option<String>,
    /// Thematic variables in document order.
    pub overlaid: Vec<(String, OverlaidValue)>,
    pub temporal: Option<BTreeMap<NaiveDate, f64>>,
    /// Unrecognized properties, kept for round-tripping.
    pub extra: serde_json::Map<String, serde_json::Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RouteMarker {
    pub distance_m: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Route {
    pub id: String,
    pub name: String,
    pub path: Geometry,
    pub origin_label: String,
    pub destination_label: String,
    pub markers: Vec<RouteMarker>,
    pub sensory: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraticuleKind {
    Meridian,
    Parallel,
}

/// A labeled meridian or parallel. On planar maps `value` is the line's
/// x (meridian) or y (parallel) coordinate in meters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Graticule {
    pub kind: GraticuleKind,
    pub value: f64,
    pub label: String,
}

/// What the visual baseline lets a sighted reader see. Criteria whose
/// capability is absent are not applicable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct BaselineCapabilities {
    pub shows_coordinates: bool,
    pub shows_temporal: bool,
    pub shows_overlaid: bool,
    pub has_routes: bool,
    pub shows_legend: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapDocument {
    pub title: String,
    pub crs: Crs,
    pub features: Vec<Feature>,
    pub routes: Vec<Route>,
    pub legend: Vec<SensoryStyle>,
    pub graticules: Vec<Graticule>,
    pub temporal_domain: Option<Vec<NaiveDate>>,
    pub capabilities: BaselineCapabilities,
}

/// Axis-aligned bounding box in CRS units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Extent {
    pub min_x: f64,
    pub min_y: f64,
    pub max_x: f64,
    pub max_y: f64,
}

impl Extent {
    pub fn of_points<'a>(points: impl IntoIterator<Item = &'a Point>) -> Option<Extent> {
        let mut it = points.into_iter();
        let first = it.next()?;
        let mut e = Extent {
            min_x: first.x,
            min_y: first.y,
            max_x: first.x,
            max_y: first.y,
        };
        for p in it {
            e.min_x = e.min_x.min(p.x);
            e.min_y = e.min_y.min(p.y);
            e.max_x = e.max_x.max(p.x);
            e.max_y = e.max_y.max(p.y);
        }
        Some(e)
    }

    pub fn width(&self) -> f64 {
        self.max_x - self.min_x
    }

    pub fn height(&self) -> f64 {
        self.max_y - self.min_y
    }

    pub fn diagonal(&self) -> f64 {
        self.width().hypot(self.height())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("map has no features")]
pub struct EmptyDocument;

/// Tight bounding box of all feature and route coordinates.
pub fn extent(doc: &MapDocument) -> Result<Extent, EmptyDocument> {
    if doc.features.is_empty() {
        return Err(EmptyDocument);
    }
    let points = doc
        .features
        .iter()
        .flat_map(|f| f.geometry.coords.iter())
        .chain(doc.routes.iter().flat_map(|r| r.path.coords.iter()));
    Extent::of_points(points).ok_or(EmptyDocument)
}

impl MapDocument {
    pub fn feature(&self, id: &str) -> Option<&Feature> {
        self.features.iter().find(|f| f.id == id)
    }

    pub fn feature_index(&self, id: &str) -> Option<usize> {
        self.features.iter().position(|f| f.id == id)
    }

    pub fn style(&self, id: &str) -> Option<&SensoryStyle> {
        self.legend.iter().find(|s| s.id == id)
    }

    /// Capabilities implied by the document's content.
    pub fn derived_capabilities(&self) -> BaselineCapabilities {
        BaselineCapabilities {
            shows_coordinates: !self.graticules.is_empty(),
            shows_temporal: self.temporal_domain.is_some(),
            shows_overlaid: self.features.iter().any(|f| !f.overlaid.is_empty()),
            has_routes: !self.routes.is_empty(),
            shows_legend: !self.legend.is_empty(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Vec<Point> {
        vec![
            Point::new(0.0, 0.0),
            Point::new(0.0, 1.0),
            Point::new(1.0, 1.0),
            Point::new(1.0, 0.0),
        ]
    }

    #[test]
    fn polygon_normalization_closes_and_winds_ccw() {
        let g = Geometry::polygon(square()).unwrap();
        assert_eq!(g.coords.first(), g.coords.last());
        assert_eq!(g.coords.len(), 5);
        assert!(signed_area_open(g.vertices()) > 0.0);
        assert_eq!(g.coords[0], Point::new(0.0, 0.0));
    }

    #[test]
    fn normalization_is_idempotent() {
        let once = Geometry::polygon(square()).unwrap();
        let twice = once.clone().normalized().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn two_vertex_polygon_is_degenerate() {
        let err = Geometry::polygon(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0)]).unwrap_err();
        assert_eq!(err, GeometryError::DegeneratePolygon);
        let collinear = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(2.0, 0.0)];
        assert!(Geometry::polygon(collinear).is_err());
    }

    #[test]
    fn data_numbers_render_without_trailing_zero() {
        assert_eq!(format_data_number(500020.0), "500020");
        assert_eq!(format_data_number(2.5), "2.5");
    }
}
