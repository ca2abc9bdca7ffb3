use serde::Serialize;

use super::format::{article, format_length, join_and};
use super::trace::trace_boundary;
use super::DescribeOptions;
use crate::model::{Extent, Geometry, GeometryKind, MapDocument, Point, Route};
use crate::spatial::{
    bearing, closest_point, path_length, point_in_polygon, point_segment_distance, quantize_cardinal, quantize_clock,
    segments_intersect, split_params, ClockResolution, LocalFrame, ShapeKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EncounterKind {
    /// The path passes through a polygon's interior.
    Crossing,
    /// The path starts or ends inside the polygon.
    Inside,
    /// The path crosses a line feature at a single point.
    CrossingPoint,
    /// The feature lies within the corridor beside the path.
    Frontage,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteEncounter {
    pub feature_id: String,
    pub kind: EncounterKind,
    /// Along-path distance in meters where the encounter begins.
    pub start_m: f64,
    /// Meters of path involved (0 for point crossings and passing points).
    pub length_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteDescription {
    pub route_id: String,
    /// "Route 1: <origin> to <destination>".
    pub prominence_heading: String,
    pub landmark_section: String,
    pub survey_section: String,
    pub encounters: Vec<RouteEncounter>,
}

struct Path {
    points: Vec<Point>,
    cumulative: Vec<f64>,
}

impl Path {
    fn new(points: Vec<Point>) -> Path {
        let mut cumulative = vec![0.0];
        for w in points.windows(2) {
            let last = *cumulative.last().unwrap();
            cumulative.push(last + (w[1].x - w[0].x).hypot(w[1].y - w[0].y));
        }
        Path { points, cumulative }
    }

    fn total(&self) -> f64 {
        *self.cumulative.last().unwrap()
    }

    fn at(&self, s: f64) -> Point {
        let i = match self.cumulative.iter().position(|&c| c >= s) {
            Some(0) => return self.points[0],
            Some(i) => i,
            None => return *self.points.last().unwrap(),
        };
        let (s0, s1) = (self.cumulative[i - 1], self.cumulative[i]);
        let t = if s1 > s0 { (s - s0) / (s1 - s0) } else { 0.0 };
        let (a, b) = (self.points[i - 1], self.points[i]);
        Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
    }
}

/// Merges touching `[start, end]` intervals.
fn merge(mut intervals: Vec<(f64, f64)>, gap: f64) -> Vec<(f64, f64)> {
    intervals.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (s, e) in intervals {
        match out.last_mut() {
            Some(last) if s <= last.1 + gap => last.1 = last.1.max(e),
            _ => out.push((s, e)),
        }
    }
    out
}

/// Stretches of the path strictly inside polygon `g`, by exact clipping.
fn inside_intervals(path: &Path, g: &Geometry, eps: f64) -> Vec<(f64, f64)> {
    let segs = g.segments();
    let mut out = Vec::new();
    for (i, w) in path.points.windows(2).enumerate() {
        let (p0, p1) = (w[0], w[1]);
        let len = path.cumulative[i + 1] - path.cumulative[i];
        if len == 0.0 {
            continue;
        }
        let ts = split_params(p0, p1, &segs, eps);
        for t in ts.windows(2) {
            let tm = (t[0] + t[1]) / 2.0;
            let mid = Point::new(p0.x + (p1.x - p0.x) * tm, p0.y + (p1.y - p0.y) * tm);
            let on_boundary = segs.iter().any(|&(a, b)| point_segment_distance(mid, a, b) <= eps);
            if !on_boundary && point_in_polygon(mid, g.vertices()) {
                out.push((path.cumulative[i] + t[0] * len, path.cumulative[i] + t[1] * len));
            }
        }
    }
    merge(out, eps)
}

/// Along-path positions where the path crosses line `g`.
fn crossing_points(path: &Path, g: &Geometry) -> Vec<f64> {
    let mut out = Vec::new();
    for (i, w) in path.points.windows(2).enumerate() {
        for (q0, q1) in g.segments() {
            if segments_intersect(w[0], w[1], q0, q1) {
                let ts = split_params(w[0], w[1], &[(q0, q1)], 0.0);
                let len = path.cumulative[i + 1] - path.cumulative[i];
                // the first interior split is the contact; otherwise an endpoint
                let t = ts.iter().copied().find(|&t| t > 0.0 && t < 1.0).unwrap_or(ts[0]);
                out.push(path.cumulative[i] + t * len);
            }
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    out
}

/// Sampled stretches of the path lying within `corridor` meters of `g`.
fn frontage_intervals(path: &Path, g: &Geometry, corridor: f64) -> Vec<(f64, f64)> {
    let total = path.total();
    let step = (corridor / 30.0).max(total / 20_000.0);
    let n = (total / step).ceil().max(1.0) as usize;
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut open: Option<(f64, f64)> = None;
    for k in 0..=n {
        let s = (k as f64 * step).min(total);
        let q = path.at(s);
        let c = closest_point(q, g);
        let near = (q.x - c.x).hypot(q.y - c.y) <= corridor;
        if near {
            open = Some(match open {
                Some((a, _)) => (a, s),
                None => (s, s),
            });
        } else if let Some(iv) = open.take() {
            out.push(iv);
        }
    }
    out.extend(open);
    out
}

fn route_landmark(r: &Route, doc: &MapDocument) -> String {
    let total = path_length(&r.path.coords, doc.crs);
    let first = r.path.coords[0];
    let last = *r.path.coords.last().unwrap();
    let mut text = format!(
        "{} runs {} from {} to {}",
        r.name,
        format_length(total),
        r.origin_label,
        r.destination_label
    );
    match bearing(first, last, doc.crs) {
        Ok(b) => {
            let clock = quantize_clock(b, ClockResolution::Hour).to_string();
            text.push_str(&format!(
                ", heading {} at {} {clock} angle overall.",
                quantize_cardinal(b),
                article(&clock)
            ))
        }
        Err(_) => text.push_str(", returning to where it began."),
    }
    if let Some(style) = r.sensory.as_deref().and_then(|id| doc.style(id)) {
        text.push_str(&format!(" It is drawn in {}.", style.color_name));
    }
    let class = crate::spatial::classify_shape(&r.path, doc.crs).class;
    if class == ShapeKind::Segment {
        text.push_str(" It is a straight line.");
    } else {
        text.push_str(&format!(" Its path runs {}.", trace_boundary(&r.path, doc.crs).text()));
    }
    if r.markers.is_empty() {
        text.push_str(" It has no distance markers.");
    } else {
        let items: Vec<String> = r
            .markers
            .iter()
            .map(|m| format!("at {} ({})", format_length(m.distance_m), m.label))
            .collect();
        text.push_str(&format!(
            " It has {} distance markers: {}.",
            r.markers.len(),
            join_and(&items)
        ));
    }
    text
}

/// Landmark, survey and heading text for one route. Encounters are
/// computed in a local metric frame with a corridor of
/// `options.corridor_m` on each side of the path.
pub fn describe_route(r: &Route, doc: &MapDocument, options: &DescribeOptions) -> RouteDescription {
    let index = doc.routes.iter().position(|x| x.id == r.id).unwrap_or(0);
    let frame = LocalFrame::around(doc.crs, &r.path.coords);
    let project = |g: &Geometry| Geometry {
        kind: g.kind,
        coords: frame.project_all(&g.coords),
    };
    let path = Path::new(frame.project_all(&r.path.coords));
    let total = path.total();

    let mut encounters: Vec<(usize, RouteEncounter)> = Vec::new();
    for (fi, f) in doc.features.iter().enumerate() {
        let g = project(&f.geometry);
        let all: Vec<Point> = g.coords.iter().chain(path.points.iter()).copied().collect();
        let eps = (Extent::of_points(&all).map_or(0.0, |e| e.diagonal()) * 1e-6).max(1e-12);
        let mut found: Vec<(EncounterKind, f64, f64)> = Vec::new();
        match g.kind {
            GeometryKind::Polygon => {
                for (s, e) in inside_intervals(&path, &g, eps) {
                    let kind = if s <= eps || e >= total - eps {
                        EncounterKind::Inside
                    } else {
                        EncounterKind::Crossing
                    };
                    found.push((kind, s, e - s));
                }
            }
            GeometryKind::Polyline => {
                for s in crossing_points(&path, &g) {
                    found.push((EncounterKind::CrossingPoint, s, 0.0));
                }
            }
            GeometryKind::Point => {}
        }
        if found.is_empty() {
            let frontage = frontage_intervals(&path, &g, options.corridor_m);
            if let Some(&(s, _)) = frontage.first() {
                let len = frontage.iter().map(|(a, b)| b - a).sum();
                found.push((EncounterKind::Frontage, s, len));
            }
        }
        encounters.extend(found.into_iter().map(|(kind, start_m, length_m)| {
            (
                fi,
                RouteEncounter {
                    feature_id: f.id.clone(),
                    kind,
                    start_m,
                    length_m,
                },
            )
        }));
    }
    encounters.sort_by(|a, b| a.1.start_m.total_cmp(&b.1.start_m).then(a.0.cmp(&b.0)));

    let mut survey = format!("The route starts at {}.", r.origin_label);
    for (fi, e) in &encounters {
        let name = &doc.features[*fi].name;
        let at = format_length(e.start_m);
        let len = format_length(e.length_m);
        survey.push(' ');
        survey.push_str(&match e.kind {
            EncounterKind::Crossing => format!("At {at} it crosses {name} for {len}."),
            EncounterKind::Inside => format!("From {at} it is inside {name} for {len}."),
            EncounterKind::CrossingPoint => format!("At {at} it crosses {name}."),
            EncounterKind::Frontage if e.length_m == 0.0 => format!("At {at} it passes {name}."),
            EncounterKind::Frontage => format!("From {at} it runs along {name} for {len}."),
        });
    }
    survey.push_str(&format!(" It ends at {}.", r.destination_label));

    RouteDescription {
        route_id: r.id.clone(),
        prominence_heading: format!("Route {}: {} to {}", index + 1, r.origin_label, r.destination_label),
        landmark_section: route_landmark(r, doc),
        survey_section: survey,
        encounters: encounters.into_iter().map(|(_, e)| e).collect(),
    }
}
