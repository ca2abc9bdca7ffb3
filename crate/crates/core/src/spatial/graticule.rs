use serde::{Deserialize, Serialize};

use super::{Cardinal, SpatialError, EARTH_RADIUS_M};
use crate::model::{Crs, Graticule, GraticuleKind, Point};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraticuleOffset {
    pub label: String,
    /// Perpendicular distance in meters.
    pub offset_m: f64,
    /// Side of the graticule the point lies on. A point on a meridian
    /// reports east, on a parallel north.
    pub side: Cardinal,
}

/// Perpendicular offset of `p` from each graticule, in input order.
pub fn graticule_offsets(p: Point, graticules: &[Graticule], crs: Crs) -> Result<Vec<GraticuleOffset>, SpatialError> {
    if graticules.is_empty() {
        return Err(SpatialError::EmptyGraticules);
    }
    let m_per_deg = EARTH_RADIUS_M * std::f64::consts::PI / 180.0;
    Ok(graticules
        .iter()
        .map(|g| {
            let (delta, scale, pos, neg) = match g.kind {
                GraticuleKind::Meridian => {
                    let scale = match crs {
                        Crs::PlanarMeters => 1.0,
                        Crs::GeographicDegrees => m_per_deg * p.y.to_radians().cos(),
                    };
                    (p.x - g.value, scale, Cardinal::East, Cardinal::West)
                }
                GraticuleKind::Parallel => {
                    let scale = match crs {
                        Crs::PlanarMeters => 1.0,
                        Crs::GeographicDegrees => m_per_deg,
                    };
                    (p.y - g.value, scale, Cardinal::North, Cardinal::South)
                }
            };
            GraticuleOffset {
                label: g.label.clone(),
                offset_m: delta.abs() * scale,
                side: if delta >= 0.0 { pos } else { neg },
            }
        })
        .collect())
}
