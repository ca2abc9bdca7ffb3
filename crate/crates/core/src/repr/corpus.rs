use std::collections::BTreeSet;

use chrono::Datelike;
use serde::Serialize;

use super::manifest::{FeatureClaims, LandmarkField, PairClaims, PairField, RouteClaims, RouteField};
use crate::describe::format::{format_length, join_and};
use crate::describe::{
    describe_landmark, describe_pair, describe_route, DescribeOptions, LandmarkDescription, PairStatement,
    RouteDescription,
};
use crate::model::{extent, format_data_number, Crs, MapDocument, Point};
use crate::spatial::point_distance;

/// All description text for one map, shared by the audio description, the
/// MUD map and the alt-text grid so that they say the same things.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Corpus {
    pub title: String,
    pub overview: String,
    pub legend_lines: Vec<String>,
    /// Feature names in document order.
    pub names: Vec<String>,
    pub landmarks: Vec<LandmarkDescription>,
    /// One statement per unordered pair `i < j`: feature `j` relative to
    /// feature `i`.
    pub pairs: Vec<PairStatement>,
    /// For each feature, every other feature relative to it.
    pub directed: Vec<Vec<PairStatement>>,
    pub routes: Vec<RouteDescription>,
    pub temporal_section: Option<String>,
    pub thematic_section: Option<String>,
}

fn month_day_year(d: chrono::NaiveDate) -> String {
    format!("{}/{}/{}", d.month(), d.day(), d.year())
}

fn overview(doc: &MapDocument) -> String {
    let n = doc.features.len();
    let mut s = format!(
        "{} is a {} map with {n} feature{}",
        doc.title,
        match doc.crs {
            Crs::PlanarMeters => "planar",
            Crs::GeographicDegrees => "geographic",
        },
        if n == 1 { "" } else { "s" }
    );
    match doc.routes.len() {
        0 => {}
        1 => s.push_str(" and 1 route"),
        k => s.push_str(&format!(" and {k} routes")),
    }
    s.push('.');
    if let Ok(e) = extent(doc) {
        let mid_y = (e.min_y + e.max_y) / 2.0;
        let mid_x = (e.min_x + e.max_x) / 2.0;
        let w = point_distance(Point::new(e.min_x, mid_y), Point::new(e.max_x, mid_y), doc.crs);
        let h = point_distance(Point::new(mid_x, e.min_y), Point::new(mid_x, e.max_y), doc.crs);
        s.push_str(&format!(
            " It covers {} east-west by {} north-south.",
            format_length(w),
            format_length(h)
        ));
    }
    let names: Vec<String> = doc.features.iter().map(|f| f.name.clone()).collect();
    if !names.is_empty() {
        s.push_str(&format!(" Features: {}.", join_and(&names)));
    }
    s
}

fn legend_lines(doc: &MapDocument) -> Vec<String> {
    doc.legend
        .iter()
        .map(|style| {
            let mut users: Vec<String> = doc
                .features
                .iter()
                .filter(|f| f.sensory.as_deref() == Some(style.id.as_str()))
                .map(|f| f.name.clone())
                .collect();
            users.extend(
                doc.routes
                    .iter()
                    .filter(|r| r.sensory.as_deref() == Some(style.id.as_str()))
                    .map(|r| r.name.clone()),
            );
            let mut line = style.color_name.clone();
            if let Some(p) = &style.pattern {
                line.push_str(&format!(" with a {p} pattern"));
            }
            if users.is_empty() {
                line.push_str(": not used by any feature.");
            } else {
                line.push_str(&format!(": {}.", join_and(&users)));
            }
            line
        })
        .collect()
}

fn temporal_section(doc: &MapDocument) -> Option<String> {
    if !doc.capabilities.shows_temporal {
        return None;
    }
    let domain = doc.temporal_domain.as_ref()?;
    let mut s = format!(
        "The map has {} time frames: {}.",
        domain.len(),
        domain.iter().map(|d| month_day_year(*d)).collect::<Vec<_>>().join(", ")
    );
    for d in domain {
        let values: Vec<String> = doc
            .features
            .iter()
            .filter_map(|f| {
                let v = f.temporal.as_ref()?.get(d)?;
                Some(format!("{} {}", f.name, format_data_number(*v)))
            })
            .collect();
        if !values.is_empty() {
            s.push_str(&format!(" {}: {}.", month_day_year(*d), values.join(", ")));
        }
    }
    Some(s)
}

fn thematic_section(doc: &MapDocument) -> Option<String> {
    if !doc.capabilities.shows_overlaid {
        return None;
    }
    let mut vars: Vec<&str> = Vec::new();
    let mut seen = BTreeSet::new();
    for f in &doc.features {
        for (k, _) in &f.overlaid {
            if seen.insert(k.as_str()) {
                vars.push(k);
            }
        }
    }
    if vars.is_empty() {
        return None;
    }
    let mut s = format!(
        "Thematic variables: {}.",
        join_and(&vars.iter().map(|v| v.to_string()).collect::<Vec<_>>())
    );
    for v in vars {
        let values: Vec<String> = doc
            .features
            .iter()
            .filter_map(|f| {
                let (_, val) = f.overlaid.iter().find(|(k, _)| k == v)?;
                Some(format!("{} {val}", f.name))
            })
            .collect();
        s.push_str(&format!(" {v}: {}.", values.join(", ")));
    }
    Some(s)
}

impl Corpus {
    pub fn build(doc: &MapDocument, options: &DescribeOptions) -> Corpus {
        let features = &doc.features;
        let directed: Vec<Vec<PairStatement>> = (0..features.len())
            .map(|i| {
                (0..features.len())
                    .filter(|&j| j != i)
                    .map(|j| describe_pair(&features[j], &features[i], doc, options))
                    .collect()
            })
            .collect();
        let mut pairs = Vec::new();
        for (i, row) in directed.iter().enumerate() {
            // row skips index i, so entries j > i sit at position j - 1
            pairs.extend(row.iter().skip(i).cloned());
        }
        Corpus {
            title: doc.title.clone(),
            overview: overview(doc),
            legend_lines: legend_lines(doc),
            names: features.iter().map(|f| f.name.clone()).collect(),
            landmarks: features.iter().map(|f| describe_landmark(f, doc)).collect(),
            pairs,
            directed,
            routes: doc.routes.iter().map(|r| describe_route(r, doc, options)).collect(),
            temporal_section: temporal_section(doc),
            thematic_section: thematic_section(doc),
        }
    }

    /// Landmark claims carrying every populated description field.
    pub fn landmark_claims(&self) -> Vec<FeatureClaims> {
        self.landmarks
            .iter()
            .map(|l| {
                let mut claims = std::collections::BTreeMap::new();
                let mut put = |field, text: &Option<String>| {
                    if let Some(t) = text {
                        claims.insert(field, t.clone());
                    }
                };
                put(LandmarkField::Sensory, &l.sensory_text);
                put(LandmarkField::Name, &Some(l.name_text.clone()));
                put(LandmarkField::Type, &Some(l.type_text.clone()));
                put(LandmarkField::Geometry, &Some(l.geometry_text.clone()));
                put(LandmarkField::Shape, &Some(l.shape_text.clone()));
                put(LandmarkField::Orientation, &l.orientation_text);
                put(LandmarkField::Size, &Some(l.size_text.clone()));
                put(LandmarkField::Overlaid, &l.overlaid_text);
                put(LandmarkField::Temporal, &l.temporal_text);
                put(LandmarkField::Absolute, &l.absolute_text);
                FeatureClaims {
                    id: l.feature_id.clone(),
                    addition: false,
                    claims,
                }
            })
            .collect()
    }

    /// All four pair fields for every unordered pair, evidenced by the
    /// pair sentence.
    pub fn pair_claims(&self) -> Vec<PairClaims> {
        self.pairs
            .iter()
            .map(|p| PairClaims {
                a: p.b_id.clone(),
                b: p.a_id.clone(),
                claims: [
                    PairField::Distance,
                    PairField::Direction,
                    PairField::Topology,
                    PairField::RelativeLocation,
                ]
                .into_iter()
                .map(|f| (f, p.text.clone()))
                .collect(),
            })
            .collect()
    }

    pub fn route_claims(&self) -> Vec<RouteClaims> {
        route_claims(&self.routes)
    }
}

/// Landmark, survey and prominence claims for each route description.
pub(crate) fn route_claims(routes: &[RouteDescription]) -> Vec<RouteClaims> {
    routes
        .iter()
        .map(|r| RouteClaims {
            id: r.route_id.clone(),
            claims: [
                (RouteField::Landmark, r.landmark_section.clone()),
                (RouteField::Survey, r.survey_section.clone()),
                (RouteField::Prominence, r.prominence_heading.clone()),
            ]
            .into_iter()
            .collect(),
        })
        .collect()
}
