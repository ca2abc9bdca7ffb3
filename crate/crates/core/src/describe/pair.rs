use serde::Serialize;

use super::format::format_length;
use super::DescribeOptions;
use crate::model::{Feature, MapDocument};
use crate::spatial::{
    bearing, centroid, distance, quantize_cardinal, quantize_clock, topology, Bearing, Cardinal, ClockPhrase,
    DistanceMode, TopoRelation,
};

/// Survey relation of `a` to `b`: distance and direction of `a` as seen
/// from `b`, and their topological relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairStatement {
    pub a_id: String,
    pub b_id: String,
    /// Centroid distance in meters.
    pub distance_m: f64,
    /// Nearest-boundary distance in meters (0 when the features meet).
    pub nearest_m: f64,
    /// Bearing from `b`'s center to `a`'s; absent for coincident centers.
    pub bearing: Option<Bearing>,
    pub clock: Option<ClockPhrase>,
    pub cardinal: Option<Cardinal>,
    pub topo: TopoRelation,
    pub text: String,
}

impl PairStatement {
    /// "23 m south (6 o'clock)"; just the distance for coincident centers.
    pub fn distance_phrase(&self) -> String {
        match (self.cardinal, self.clock) {
            (Some(c), Some(k)) => format!("{} {c} ({k})", format_length(self.distance_m)),
            _ => format_length(self.distance_m),
        }
    }
}

fn topo_clause(topo: TopoRelation, a: &str, b: &str) -> String {
    match topo {
        TopoRelation::Disjoint => "do not touch".into(),
        TopoRelation::Touches => "touch".into(),
        TopoRelation::Overlaps => "overlap".into(),
        TopoRelation::Crosses => "cross".into(),
        TopoRelation::Equals => "occupy the same place".into(),
        TopoRelation::Contains => format!("are nested, {a} containing {b}"),
        TopoRelation::Within => format!("are nested, {a} lying within {b}"),
    }
}

/// "<A> is <d> <cardinal> (<clock>) from <B>; they <topology>."
pub fn describe_pair(a: &Feature, b: &Feature, doc: &MapDocument, options: &DescribeOptions) -> PairStatement {
    let (ca, cb) = (centroid(&a.geometry), centroid(&b.geometry));
    let distance_m = distance(&a.geometry, &b.geometry, DistanceMode::Centroid, doc.crs);
    let nearest_m = distance(&a.geometry, &b.geometry, DistanceMode::NearestBoundary, doc.crs);
    let bearing = bearing(cb, ca, doc.crs).ok();
    let clock = bearing.map(|x| quantize_clock(x, options.pair_clock));
    let cardinal = bearing.map(quantize_cardinal);
    let topo = topology(&a.geometry, &b.geometry);
    let mut s = PairStatement {
        a_id: a.id.clone(),
        b_id: b.id.clone(),
        distance_m,
        nearest_m,
        bearing,
        clock,
        cardinal,
        topo,
        text: String::new(),
    };
    let clause = topo_clause(topo, &a.name, &b.name);
    s.text = if bearing.is_some() {
        format!("{} is {} from {}; they {clause}.", a.name, s.distance_phrase(), b.name)
    } else {
        format!(
            "{} is {} from {}, sharing the same center; they {clause}.",
            a.name,
            s.distance_phrase(),
            b.name
        )
    };
    s
}
