use serde::{Deserialize, Serialize};

use crate::model::{Extent, Geometry, GeometryKind, Point};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopoRelation {
    Disjoint,
    Touches,
    Overlaps,
    Contains,
    Within,
    Crosses,
    Equals,
}

impl TopoRelation {
    /// The relation seen from the other geometry.
    pub fn converse(self) -> TopoRelation {
        match self {
            TopoRelation::Contains => TopoRelation::Within,
            TopoRelation::Within => TopoRelation::Contains,
            other => other,
        }
    }

    pub fn word(self) -> &'static str {
        match self {
            TopoRelation::Disjoint => "disjoint",
            TopoRelation::Touches => "touches",
            TopoRelation::Overlaps => "overlaps",
            TopoRelation::Contains => "contains",
            TopoRelation::Within => "within",
            TopoRelation::Crosses => "crosses",
            TopoRelation::Equals => "equals",
        }
    }
}

fn sub(a: Point, b: Point) -> Point {
    Point::new(a.x - b.x, a.y - b.y)
}

fn cross(a: Point, b: Point) -> f64 {
    a.x * b.y - a.y * b.x
}

fn dot(a: Point, b: Point) -> f64 {
    a.x * b.x + a.y * b.y
}

fn dist(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

fn orient(a: Point, b: Point, c: Point) -> f64 {
    cross(sub(b, a), sub(c, a))
}

/// Parameter of the projection of `p` onto segment `a-b`, clamped to [0, 1].
fn project_param(p: Point, a: Point, b: Point) -> f64 {
    let ab = sub(b, a);
    let len2 = dot(ab, ab);
    if len2 == 0.0 {
        0.0
    } else {
        (dot(sub(p, a), ab) / len2).clamp(0.0, 1.0)
    }
}

fn lerp(a: Point, b: Point, t: f64) -> Point {
    Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t)
}

pub fn closest_point_on_segment(p: Point, a: Point, b: Point) -> Point {
    lerp(a, b, project_param(p, a, b))
}

pub fn point_segment_distance(p: Point, a: Point, b: Point) -> f64 {
    dist(p, closest_point_on_segment(p, a, b))
}

fn on_segment_collinear(a: Point, b: Point, p: Point) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed-segment intersection test using orientation signs.
pub fn segments_intersect(a0: Point, a1: Point, b0: Point, b1: Point) -> bool {
    let d1 = orient(b0, b1, a0);
    let d2 = orient(b0, b1, a1);
    let d3 = orient(a0, a1, b0);
    let d4 = orient(a0, a1, b1);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment_collinear(b0, b1, a0))
        || (d2 == 0.0 && on_segment_collinear(b0, b1, a1))
        || (d3 == 0.0 && on_segment_collinear(a0, a1, b0))
        || (d4 == 0.0 && on_segment_collinear(a0, a1, b1))
}

pub fn segment_distance(a0: Point, a1: Point, b0: Point, b1: Point) -> f64 {
    if segments_intersect(a0, a1, b0, b1) {
        return 0.0;
    }
    point_segment_distance(a0, b0, b1)
        .min(point_segment_distance(a1, b0, b1))
        .min(point_segment_distance(b0, a0, a1))
        .min(point_segment_distance(b1, a0, a1))
}

/// Even-odd ray casting. Accepts open or closed rings. Points exactly on
/// the boundary may land on either side.
pub fn point_in_polygon(p: Point, ring: &[Point]) -> bool {
    let n = ring.len();
    if n < 3 {
        return false;
    }
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[j], ring[i]);
        if (a.y > p.y) != (b.y > p.y) {
            let x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// A closed ring is simple when no two edges meet except adjacent edges at
/// their shared vertex.
pub fn is_simple_ring(ring: &[Point]) -> bool {
    let v: Vec<Point> = if ring.len() > 1 && ring.first() == ring.last() {
        ring[..ring.len() - 1].to_vec()
    } else {
        ring.to_vec()
    };
    let n = v.len();
    if n < 3 {
        return false;
    }
    let edge = |i: usize| (v[i], v[(i + 1) % n]);
    for i in 0..n {
        for j in i + 1..n {
            let (a0, a1) = edge(i);
            let (b0, b1) = edge(j);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                // shared vertex s; reject if the edges fold back over each other
                let (s, u, w) = if j == i + 1 { (a1, a0, b1) } else { (a0, a1, b0) };
                if orient(u, s, w) == 0.0 && dot(sub(u, s), sub(w, s)) > 0.0 {
                    return false;
                }
                if n == 3 {
                    continue;
                }
            } else if segments_intersect(a0, a1, b0, b1) {
                return false;
            }
        }
    }
    true
}

/// Relative tolerance for contact decisions: 1e-6 of the diagonal of the
/// pair's combined bounding box.
pub fn tolerance(a: &Geometry, b: &Geometry) -> f64 {
    let e = Extent::of_points(a.coords.iter().chain(b.coords.iter())).expect("geometries have coordinates");
    (e.diagonal() * 1e-6).max(1e-12)
}

/// Minimum distance between the boundaries (points, line segments, polygon
/// rings) of two geometries, in CRS units.
pub fn boundary_distance(a: &Geometry, b: &Geometry) -> f64 {
    let bs = b.segments();
    let mut best = f64::INFINITY;
    for (a0, a1) in a.segments() {
        for &(b0, b1) in &bs {
            best = best.min(segment_distance(a0, a1, b0, b1));
            if best == 0.0 {
                return 0.0;
            }
        }
    }
    best
}

/// Closest point of `g` (including a polygon's interior) to `p`.
pub fn closest_point(p: Point, g: &Geometry) -> Point {
    if g.kind == GeometryKind::Polygon && point_in_polygon(p, g.vertices()) {
        return p;
    }
    let mut best = (f64::INFINITY, g.coords[0]);
    for (a, b) in g.segments() {
        let q = closest_point_on_segment(p, a, b);
        let d = dist(p, q);
        if d < best.0 {
            best = (d, q);
        }
    }
    best.1
}

pub fn intersects(a: &Geometry, b: &Geometry, eps: f64) -> bool {
    if boundary_distance(a, b) <= eps {
        return true;
    }
    let inside = |pts: &[Point], poly: &Geometry| {
        poly.kind == GeometryKind::Polygon && pts.iter().any(|&p| point_in_polygon(p, poly.vertices()))
    };
    inside(&a.coords, b) || inside(&b.coords, a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Loc {
    Interior,
    Boundary,
    Exterior,
}

fn min_distance_to(p: Point, segs: &[(Point, Point)]) -> f64 {
    segs.iter()
        .map(|&(a, b)| point_segment_distance(p, a, b))
        .fold(f64::INFINITY, f64::min)
}

/// Parameters in `[0, 1]` (sorted, deduplicated, including both ends) at
/// which segment `p0-p1` meets any of `target`'s segments.
pub(crate) fn split_params(p0: Point, p1: Point, target: &[(Point, Point)], eps: f64) -> Vec<f64> {
    let r = sub(p1, p0);
    let len = dot(r, r).sqrt();
    let mut ts = vec![0.0, 1.0];
    if len == 0.0 {
        return ts;
    }
    for &(q0, q1) in target {
        let s = sub(q1, q0);
        let slen = dot(s, s).sqrt();
        if slen > 0.0 {
            let denom = cross(r, s);
            if denom.abs() > 1e-12 * len * slen {
                let qp = sub(q0, p0);
                let t = cross(qp, s) / denom;
                let u = cross(qp, r) / denom;
                let (tt, tu) = (eps / len, eps / slen);
                if t >= -tt && t <= 1.0 + tt && u >= -tu && u <= 1.0 + tu {
                    ts.push(t.clamp(0.0, 1.0));
                }
            }
        }
        for q in [q0, q1] {
            if point_segment_distance(q, p0, p1) <= eps {
                ts.push(project_param(q, p0, p1));
            }
        }
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    ts
}

/// Splits every segment of `chain` wherever it meets `target` and returns
/// the midpoint of each resulting piece.
fn piece_midpoints(chain: &[(Point, Point)], target: &[(Point, Point)], eps: f64) -> Vec<Point> {
    let mut mids = Vec::new();
    for &(p0, p1) in chain {
        let len = dist(p0, p1);
        if len == 0.0 {
            continue;
        }
        let ts = split_params(p0, p1, target, eps);
        for w in ts.windows(2) {
            if (w[1] - w[0]) * len > 0.0 {
                mids.push(lerp(p0, p1, (w[0] + w[1]) / 2.0));
            }
        }
    }
    mids
}

fn locate_in_polygon(p: Point, poly: &Geometry, segs: &[(Point, Point)], eps: f64) -> Loc {
    if min_distance_to(p, segs) <= eps {
        Loc::Boundary
    } else if point_in_polygon(p, poly.vertices()) {
        Loc::Interior
    } else {
        Loc::Exterior
    }
}

fn is_open(g: &Geometry) -> bool {
    g.coords.first() != g.coords.last()
}

fn at_line_end(p: Point, line: &Geometry, eps: f64) -> bool {
    is_open(line) && (dist(p, line.coords[0]) <= eps || dist(p, *line.coords.last().unwrap()) <= eps)
}

fn point_line(p: Point, line: &Geometry, eps: f64) -> TopoRelation {
    if at_line_end(p, line, eps) {
        TopoRelation::Touches
    } else {
        TopoRelation::Within
    }
}

/// Representative contact points between two segment chains.
fn contact_points(a: &[(Point, Point)], b: &[(Point, Point)], eps: f64) -> Vec<Point> {
    let mut out = Vec::new();
    for &(p0, p1) in a {
        for &(q0, q1) in b {
            if segment_distance(p0, p1, q0, q1) > eps {
                continue;
            }
            let r = sub(p1, p0);
            let s = sub(q1, q0);
            let denom = cross(r, s);
            let qp = sub(q0, p0);
            if denom != 0.0 {
                let t = cross(qp, s) / denom;
                let u = cross(qp, r) / denom;
                if (0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u) {
                    out.push(lerp(p0, p1, t));
                    continue;
                }
            }
            let candidates = [
                (point_segment_distance(p0, q0, q1), p0),
                (point_segment_distance(p1, q0, q1), p1),
                (point_segment_distance(q0, p0, p1), q0),
                (point_segment_distance(q1, p0, p1), q1),
            ];
            let best = candidates
                .iter()
                .min_by(|x, y| x.0.total_cmp(&y.0))
                .expect("four candidates");
            out.push(best.1);
        }
    }
    out
}

fn line_line(a: &Geometry, b: &Geometry, eps: f64) -> TopoRelation {
    let (sa, sb) = (a.segments(), b.segments());
    let on = |mids: Vec<Point>, segs: &[(Point, Point)]| -> Vec<bool> {
        mids.into_iter().map(|m| min_distance_to(m, segs) <= eps).collect()
    };
    let a_on = on(piece_midpoints(&sa, &sb, eps), &sb);
    let b_on = on(piece_midpoints(&sb, &sa, eps), &sa);
    let a_all = a_on.iter().all(|&x| x);
    let b_all = b_on.iter().all(|&x| x);
    if a_all && b_all {
        return TopoRelation::Equals;
    }
    if b_all {
        return TopoRelation::Contains;
    }
    if a_all {
        return TopoRelation::Within;
    }
    if a_on.iter().any(|&x| x) || b_on.iter().any(|&x| x) {
        return TopoRelation::Overlaps;
    }
    let interior_crossing = contact_points(&sa, &sb, eps)
        .into_iter()
        .any(|q| !at_line_end(q, a, eps) && !at_line_end(q, b, eps));
    if interior_crossing {
        TopoRelation::Crosses
    } else {
        TopoRelation::Touches
    }
}

fn locations(chain: &Geometry, poly: &Geometry, eps: f64) -> Vec<Loc> {
    let ps = poly.segments();
    piece_midpoints(&chain.segments(), &ps, eps)
        .into_iter()
        .map(|m| locate_in_polygon(m, poly, &ps, eps))
        .collect()
}

fn line_polygon(line: &Geometry, poly: &Geometry, eps: f64) -> TopoRelation {
    let locs = locations(line, poly, eps);
    let has_in = locs.contains(&Loc::Interior);
    let has_out = locs.contains(&Loc::Exterior);
    match (has_in, has_out) {
        (true, true) => TopoRelation::Crosses,
        (true, false) => TopoRelation::Within,
        _ => TopoRelation::Touches,
    }
}

fn polygon_polygon(a: &Geometry, b: &Geometry, eps: f64) -> TopoRelation {
    let la = locations(a, b, eps);
    let lb = locations(b, a, eps);
    let (a_in, a_out) = (la.contains(&Loc::Interior), la.contains(&Loc::Exterior));
    let (b_in, b_out) = (lb.contains(&Loc::Interior), lb.contains(&Loc::Exterior));
    if !a_in && !a_out && !b_in && !b_out {
        TopoRelation::Equals
    } else if !b_out {
        TopoRelation::Contains
    } else if !a_out {
        TopoRelation::Within
    } else if a_in || b_in {
        TopoRelation::Overlaps
    } else {
        TopoRelation::Touches
    }
}

fn dimension(g: &Geometry) -> u8 {
    match g.kind {
        GeometryKind::Point => 0,
        GeometryKind::Polyline => 1,
        GeometryKind::Polygon => 2,
    }
}

/// Topological relation of `a` to `b`, by precedence
/// equals > contains/within > crosses > overlaps > touches > disjoint.
pub fn topology(a: &Geometry, b: &Geometry) -> TopoRelation {
    relate(a, b, tolerance(a, b))
}

pub(crate) fn relate(a: &Geometry, b: &Geometry, eps: f64) -> TopoRelation {
    use GeometryKind::*;
    if dimension(a) > dimension(b) {
        return relate(b, a, eps).converse();
    }
    if !intersects(a, b, eps) {
        return TopoRelation::Disjoint;
    }
    match (a.kind, b.kind) {
        (Point, Point) => TopoRelation::Equals,
        (Point, Polyline) => point_line(a.coords[0], b, eps),
        (Point, Polygon) => match locate_in_polygon(a.coords[0], b, &b.segments(), eps) {
            Loc::Interior => TopoRelation::Within,
            _ => TopoRelation::Touches,
        },
        (Polyline, Polyline) => line_line(a, b, eps),
        (Polyline, Polygon) => line_polygon(a, b, eps),
        (Polygon, Polygon) => polygon_polygon(a, b, eps),
        _ => unreachable!("pairs are ordered by dimension"),
    }
}
