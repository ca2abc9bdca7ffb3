use std::collections::HashSet;

use serde::Serialize;

use super::{Crs, GeometryKind, GraticuleKind, MapDocument};
use crate::spatial::{is_simple_ring, path_length};

/// One broken invariant. `code` is a stable kebab-case identifier, `path`
/// locates the offending value (`features[2].name`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: &'static str,
    pub path: String,
    pub message: String,
}

fn push(out: &mut Vec<Violation>, code: &'static str, path: String, message: impl Into<String>) {
    out.push(Violation {
        code,
        path,
        message: message.into(),
    });
}

/// Checks every document invariant. The result is empty exactly when the
/// document is valid; violations are ordered by feature index, then legend,
/// routes, graticules and document-level capabilities.
pub fn validate(doc: &MapDocument) -> Vec<Violation> {
    let mut out = Vec::new();
    let legend_ids: HashSet<&str> = doc.legend.iter().map(|s| s.id.as_str()).collect();
    let domain: Option<HashSet<_>> = doc.temporal_domain.as_ref().map(|d| d.iter().collect());
    let mut seen = HashSet::new();

    for (i, f) in doc.features.iter().enumerate() {
        let at = |field: &str| format!("features[{i}].{field}");
        if f.id.is_empty() {
            push(&mut out, "empty-id", at("id"), "feature id is empty");
        } else if !seen.insert(f.id.as_str()) {
            push(
                &mut out,
                "duplicate-id",
                at("id"),
                format!("duplicate feature id {:?}", f.id),
            );
        }
        if f.name.trim().is_empty() {
            push(
                &mut out,
                "missing-name",
                at("name"),
                "every object in the text map needs to have a name",
            );
        }
        if let Some(style) = &f.sensory {
            if !legend_ids.contains(style.as_str()) {
                push(
                    &mut out,
                    "unknown-style",
                    at("style"),
                    format!("style {style:?} is not in the legend"),
                );
            }
        }
        match f.geometry.clone().normalized() {
            Err(e) => push(&mut out, "invalid-geometry", at("geometry"), e.to_string()),
            Ok(n) if n != f.geometry => push(
                &mut out,
                "unnormalized-geometry",
                at("geometry"),
                "geometry is not in normalized form (closed, counter-clockwise, no repeated vertices)",
            ),
            Ok(_) => {
                if f.geometry.kind == GeometryKind::Polygon && !is_simple_ring(&f.geometry.coords) {
                    push(
                        &mut out,
                        "non-simple-polygon",
                        at("geometry"),
                        "non-simple polygon: edges intersect",
                    );
                }
            }
        }
        if let Some(series) = &f.temporal {
            match &domain {
                None => push(
                    &mut out,
                    "temporal-without-domain",
                    at("temporal"),
                    "feature has a temporal series but the map has no temporal domain",
                ),
                Some(d) => {
                    if let Some(date) = series.keys().find(|k| !d.contains(k)) {
                        push(
                            &mut out,
                            "temporal-outside-domain",
                            at("temporal"),
                            format!("date {date} is not in the temporal domain"),
                        );
                    }
                }
            }
        }
    }

    let mut seen_styles = HashSet::new();
    for (i, s) in doc.legend.iter().enumerate() {
        if !seen_styles.insert(s.id.as_str()) {
            push(
                &mut out,
                "duplicate-style",
                format!("legend[{i}].id"),
                format!("duplicate legend id {:?}", s.id),
            );
        }
        if s.color_name.trim().is_empty() {
            push(
                &mut out,
                "empty-color-name",
                format!("legend[{i}].color_name"),
                "legend color name is empty",
            );
        }
    }

    for (i, r) in doc.routes.iter().enumerate() {
        let at = |field: &str| format!("routes[{i}].{field}");
        if r.path.kind != GeometryKind::Polyline {
            push(
                &mut out,
                "route-not-polyline",
                at("path"),
                "route path must be a polyline",
            );
        }
        let total = path_length(&r.path.coords, doc.crs);
        if total <= 0.0 || !total.is_finite() {
            push(
                &mut out,
                "zero-length-route",
                at("path"),
                "route path length must be positive",
            );
        }
        let mut prev = f64::NEG_INFINITY;
        for (k, m) in r.markers.iter().enumerate() {
            if m.distance_m.is_nan() || m.distance_m <= prev {
                push(
                    &mut out,
                    "marker-order",
                    at(&format!("markers[{k}]")),
                    "marker distances must be strictly increasing",
                );
            }
            if m.distance_m < 0.0 || m.distance_m > total + 1e-9 * total.max(1.0) {
                push(
                    &mut out,
                    "marker-beyond-path",
                    at(&format!("markers[{k}]")),
                    format!("marker at {} m is outside the {total} m path", m.distance_m),
                );
            }
            prev = m.distance_m;
        }
        if let Some(style) = &r.sensory {
            if !legend_ids.contains(style.as_str()) {
                push(
                    &mut out,
                    "unknown-style",
                    at("style"),
                    format!("style {style:?} is not in the legend"),
                );
            }
        }
    }

    for (i, g) in doc.graticules.iter().enumerate() {
        // Planar grid lines are in meters and may lie anywhere.
        let limit = match (doc.crs, g.kind) {
            (Crs::PlanarMeters, _) => f64::MAX,
            (Crs::GeographicDegrees, GraticuleKind::Meridian) => 180.0,
            (Crs::GeographicDegrees, GraticuleKind::Parallel) => 90.0,
        };
        if !(g.value.is_finite() && g.value.abs() <= limit) {
            push(
                &mut out,
                "graticule-out-of-range",
                format!("graticules[{i}].value"),
                format!("{} value {} outside [-{limit}, {limit}]", g.label, g.value),
            );
        }
    }

    let caps = doc.capabilities;
    if caps.has_routes != !doc.routes.is_empty() {
        push(
            &mut out,
            "capability-mismatch",
            "capabilities.has_routes".into(),
            "has_routes must hold exactly when the map has routes",
        );
    }
    if caps.shows_temporal != doc.temporal_domain.is_some() {
        push(
            &mut out,
            "capability-mismatch",
            "capabilities.shows_temporal".into(),
            "shows_temporal must hold exactly when the map has a temporal domain",
        );
    }
    out
}
