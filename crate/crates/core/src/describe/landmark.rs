use chrono::Datelike;
use serde::Serialize;

use super::absolute::describe_absolute;
use super::format::{format_area, format_length, join_and};
use super::trace::trace_boundary;
use crate::model::{Feature, GeometryKind, MapDocument};
use crate::spatial::{
    classify_shape, orientation, quantize_cardinal, quantize_clock, size_metrics, Bearing, ClockResolution, ShapeKind,
};

/// Per-feature landmark text. Optional fields are absent only when the map
/// has nothing to say for them (no legend, no temporal or thematic data, no
/// coordinates, or a point, which has no orientation).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LandmarkDescription {
    pub feature_id: String,
    pub sensory_text: Option<String>,
    pub name_text: String,
    pub type_text: String,
    pub geometry_text: String,
    pub shape_text: String,
    pub orientation_text: Option<String>,
    pub size_text: String,
    pub overlaid_text: Option<String>,
    pub temporal_text: Option<String>,
    pub absolute_text: Option<String>,
}

impl LandmarkDescription {
    /// All sentences in fixed order, space-separated.
    pub fn paragraph(&self) -> String {
        let mut parts: Vec<&str> = Vec::new();
        if let Some(s) = &self.sensory_text {
            parts.push(s);
        }
        parts.push(&self.name_text);
        parts.push(&self.type_text);
        parts.push(&self.geometry_text);
        parts.push(&self.shape_text);
        if let Some(s) = &self.orientation_text {
            parts.push(s);
        }
        parts.push(&self.size_text);
        for s in [&self.overlaid_text, &self.temporal_text, &self.absolute_text]
            .into_iter()
            .flatten()
        {
            parts.push(s);
        }
        parts.join(" ")
    }
}

fn sensory_text(f: &Feature, doc: &MapDocument) -> Option<String> {
    if doc.legend.is_empty() {
        return None;
    }
    let style = f.sensory.as_deref().and_then(|id| doc.style(id));
    Some(match style {
        None => "Shown without a legend style.".to_string(),
        Some(s) => {
            let mut t = format!("Shown in {}", s.color_name);
            if let Some(p) = &s.pattern {
                t.push_str(&format!(" with a {p} pattern"));
            }
            if let Some(n) = &s.notes {
                t.push_str(&format!(" ({n})"));
            }
            t.push('.');
            t
        }
    })
}

fn shape_text(f: &Feature, doc: &MapDocument) -> String {
    let class = classify_shape(&f.geometry, doc.crs);
    match class.class {
        ShapeKind::Point => "Shape: a single point.".into(),
        ShapeKind::Segment => "Shape: a straight line.".into(),
        ShapeKind::Triangle | ShapeKind::Rectangle | ShapeKind::Square => {
            format!("Shape: {}.", class.class.word())
        }
        ShapeKind::RegularPolygon => format!("Shape: regular polygon with {} sides.", class.vertex_count),
        ShapeKind::CircleLike => "Shape: roughly a circle.".into(),
        ShapeKind::Irregular => {
            let trace = trace_boundary(&f.geometry, doc.crs).text();
            if f.geometry.kind == GeometryKind::Polygon {
                format!("Shape: irregular; from its northernmost point the border runs {trace}.")
            } else {
                format!("Shape: a winding line; from its start it runs {trace}.")
            }
        }
    }
}

fn orientation_text(f: &Feature, doc: &MapDocument) -> Option<String> {
    let info = orientation(&f.geometry, doc.crs).ok()?;
    let axis = |a: Bearing| {
        let b = a.opposite();
        (
            format!("{} to {}", quantize_cardinal(a), quantize_cardinal(b)),
            format!(
                "{} to {}",
                quantize_clock(a, ClockResolution::Hour),
                quantize_clock(b, ClockResolution::Hour)
            ),
        )
    };
    let (along, along_clock) = axis(info.principal_bearing);
    let mut text = match classify_shape(&f.geometry, doc.crs).class {
        ShapeKind::CircleLike => "Orientation: round, so it has no long axis.".to_string(),
        ShapeKind::Square => {
            let (across, across_clock) = axis(Bearing::from_degrees(info.principal_bearing.degrees() + 90.0).axis());
            format!("Orientation: the sides run {along} and {across} ({along_clock} and {across_clock}).")
        }
        _ => format!("Orientation: the long axis runs {along} ({along_clock})."),
    };
    if let Some(facing) = info.facing {
        text.push_str(&format!(
            " The point of the triangle faces {} at {}.",
            quantize_cardinal(facing),
            quantize_clock(facing, ClockResolution::Hour)
        ));
    }
    Some(text)
}

fn size_text(f: &Feature, doc: &MapDocument) -> String {
    let m = size_metrics(&f.geometry, doc.crs);
    let extent = format!(
        "extent {} east-west by {} north-south",
        format_length(m.bbox_width),
        format_length(m.bbox_height)
    );
    match f.geometry.kind {
        GeometryKind::Point => "Size: a single location with no extent.".into(),
        GeometryKind::Polyline => format!("Size: length {}; {extent}.", format_length(m.path_length)),
        GeometryKind::Polygon => {
            let sides = if m.edge_lengths.len() <= 8 {
                let each: Vec<String> = m.edge_lengths.iter().map(|&l| format_length(l)).collect();
                format!("sides of {}; perimeter {}", join_and(&each), format_length(m.perimeter))
            } else {
                format!(
                    "perimeter {} across {} sides",
                    format_length(m.perimeter),
                    m.edge_lengths.len()
                )
            };
            format!("Size: {sides}; area {}; {extent}.", format_area(m.area))
        }
    }
}

fn temporal_text(f: &Feature) -> Option<String> {
    let series = f.temporal.as_ref().filter(|s| !s.is_empty())?;
    let items: Vec<String> = series
        .iter()
        .map(|(d, v)| {
            format!(
                "{}/{}/{}: {}",
                d.month(),
                d.day(),
                d.year(),
                crate::model::format_data_number(*v)
            )
        })
        .collect();
    Some(format!("Temporal values: {}.", items.join(", ")))
}

fn overlaid_text(f: &Feature) -> Option<String> {
    if f.overlaid.is_empty() {
        return None;
    }
    let items: Vec<String> = f.overlaid.iter().map(|(k, v)| format!("{v} {k}")).collect();
    Some(format!("Overlaid values: {}.", items.join(", ")))
}

/// Landmark description of `f`, one sentence per characteristic.
pub fn describe_landmark(f: &Feature, doc: &MapDocument) -> LandmarkDescription {
    LandmarkDescription {
        feature_id: f.id.clone(),
        sensory_text: sensory_text(f, doc),
        name_text: format!("Name: {}.", f.name),
        type_text: if f.type_label.is_empty() {
            "Type: unspecified.".into()
        } else {
            format!("Type: {}.", f.type_label)
        },
        geometry_text: format!("Drawn as a {}.", f.geometry.kind.word()),
        shape_text: shape_text(f, doc),
        orientation_text: orientation_text(f, doc),
        size_text: size_text(f, doc),
        overlaid_text: overlaid_text(f),
        temporal_text: temporal_text(f),
        absolute_text: describe_absolute(f, doc).ok(),
    }
}
