use super::format::{format_coordinate, format_length, join_and};
use super::DescribeError;
use crate::model::{Crs, Feature, GeometryKind, MapDocument, Point};
use crate::spatial::{centroid, graticule_offsets};

fn coordinates(p: Point, crs: Crs) -> String {
    match crs {
        Crs::GeographicDegrees => {
            let ns = if p.y < 0.0 { 'S' } else { 'N' };
            let ew = if p.x < 0.0 { 'W' } else { 'E' };
            format!("{:.7}° {ns}, {:.7}° {ew}", p.y.abs(), p.x.abs())
        }
        Crs::PlanarMeters => format!("x = {} m, y = {} m", format_coordinate(p.x), format_coordinate(p.y)),
    }
}

/// Coordinates of the feature's center, followed by its offsets from every
/// graticule.
pub fn describe_absolute(f: &Feature, doc: &MapDocument) -> Result<String, DescribeError> {
    if !doc.capabilities.shows_coordinates {
        return Err(DescribeError::CoordinatesNotShown);
    }
    let anchor = centroid(&f.geometry);
    let subject = match f.geometry.kind {
        GeometryKind::Point => f.name.clone(),
        _ => format!("The center of {}", f.name),
    };
    let mut text = format!("{subject} is at {}", coordinates(anchor, doc.crs));
    if let Ok(offsets) = graticule_offsets(anchor, &doc.graticules, doc.crs) {
        let clauses: Vec<String> = offsets
            .iter()
            .map(|o| {
                let len = format_length(o.offset_m);
                if len == "0 m" {
                    format!("on {}", o.label)
                } else {
                    format!("{len} {} of {}", o.side, o.label)
                }
            })
            .collect();
        text.push_str(&format!("; it is {}", join_and(&clauses)));
    }
    text.push('.');
    Ok(text)
}
