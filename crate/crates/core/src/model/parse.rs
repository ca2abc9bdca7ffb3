use std::collections::{BTreeMap, BTreeSet, HashSet};

use chrono::NaiveDate;
use serde_json::{Map, Value};

use super::{
    BaselineCapabilities, Crs, Feature, Geometry, GeometryKind, Graticule, GraticuleKind, MapDocument, OverlaidValue,
    Point, Route, RouteMarker, SensoryStyle,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MapError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {message}")]
    Semantic { path: String, message: String },
}

fn semantic(path: impl Into<String>, message: impl Into<String>) -> MapError {
    MapError::Semantic {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses a GeoJSON feature collection with the map foreign members
/// (`title`, `crs`, `legend`, `routes`, `graticules`, `capabilities`).
pub fn parse_map(input: &[u8]) -> Result<MapDocument, MapError> {
    let root: Value = serde_json::from_slice(input).map_err(|e| MapError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let root = root
        .as_object()
        .ok_or_else(|| semantic("$", "top level must be an object"))?;
    match root.get("type").and_then(Value::as_str) {
        Some("FeatureCollection") => {}
        Some(other) => return Err(semantic("$.type", format!("expected FeatureCollection, found {other}"))),
        None => return Err(semantic("$.type", "missing \"type\": \"FeatureCollection\"")),
    }

    let title = opt_str(root, "title", "$")?.unwrap_or_default();
    let crs = match root.get("crs") {
        None => Crs::GeographicDegrees,
        Some(Value::String(s)) if s == "planar" => Crs::PlanarMeters,
        Some(Value::String(s)) if s == "geographic" => Crs::GeographicDegrees,
        Some(_) => return Err(semantic("$.crs", "crs must be \"planar\" or \"geographic\"")),
    };

    let legend = match root.get("legend") {
        None => Vec::new(),
        Some(v) => parse_legend(v)?,
    };
    let style_ids: HashSet<&str> = legend.iter().map(|s| s.id.as_str()).collect();

    let features_value = root
        .get("features")
        .ok_or_else(|| semantic("$.features", "missing features array"))?;
    let features_array = features_value
        .as_array()
        .ok_or_else(|| semantic("$.features", "features must be an array"))?;

    let mut features = Vec::with_capacity(features_array.len());
    let mut seen_ids = HashSet::new();
    for (i, fv) in features_array.iter().enumerate() {
        let path = format!("$.features[{i}]");
        let feature = parse_feature(fv, i, &path)?;
        if !seen_ids.insert(feature.id.clone()) {
            return Err(semantic(path, format!("duplicate feature id \"{}\"", feature.id)));
        }
        if let Some(style) = &feature.sensory {
            if !style_ids.contains(style.as_str()) {
                return Err(semantic(
                    format!("{path}.properties.style"),
                    format!("unknown legend reference \"{style}\""),
                ));
            }
        }
        features.push(feature);
    }

    let routes = match root.get("routes") {
        None => Vec::new(),
        Some(v) => parse_routes(v, &style_ids)?,
    };
    let graticules = match root.get("graticules") {
        None => Vec::new(),
        Some(v) => parse_graticules(v)?,
    };

    let dates: BTreeSet<NaiveDate> = features
        .iter()
        .filter_map(|f| f.temporal.as_ref())
        .flat_map(|t| t.keys().copied())
        .collect();
    let temporal_domain = if dates.is_empty() {
        None
    } else {
        Some(dates.into_iter().collect())
    };

    let mut doc = MapDocument {
        title,
        crs,
        features,
        routes,
        legend,
        graticules,
        temporal_domain,
        capabilities: BaselineCapabilities::default(),
    };
    doc.capabilities = doc.derived_capabilities();
    if let Some(v) = root.get("capabilities") {
        apply_capabilities(v, &mut doc.capabilities)?;
    }
    Ok(doc)
}

fn opt_str(obj: &Map<String, Value>, key: &str, path: &str) -> Result<Option<String>, MapError> {
    match obj.get(key) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(Value::Number(n)) if key == "id" => Ok(Some(n.to_string())),
        Some(_) => Err(semantic(format!("{path}.{key}"), "expected a string")),
    }
}

fn req_str(obj: &Map<String, Value>, key: &str, path: &str) -> Result<String, MapError> {
    opt_str(obj, key, path)?.ok_or_else(|| semantic(format!("{path}.{key}"), "missing required string"))
}

fn as_object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, MapError> {
    v.as_object().ok_or_else(|| semantic(path, "expected an object"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, MapError> {
    v.as_array().ok_or_else(|| semantic(path, "expected an array"))
}

fn as_f64(v: &Value, path: &str) -> Result<f64, MapError> {
    v.as_f64().ok_or_else(|| semantic(path, "expected a number"))
}

fn parse_position(v: &Value, path: &str) -> Result<Point, MapError> {
    let arr = as_array(v, path)?;
    if arr.len() < 2 {
        return Err(semantic(path, "position needs two numbers"));
    }
    Ok(Point::new(
        as_f64(&arr[0], &format!("{path}[0]"))?,
        as_f64(&arr[1], &format!("{path}[1]"))?,
    ))
}

fn parse_positions(v: &Value, path: &str) -> Result<Vec<Point>, MapError> {
    as_array(v, path)?
        .iter()
        .enumerate()
        .map(|(i, p)| parse_position(p, &format!("{path}[{i}]")))
        .collect()
}

fn parse_geometry(v: &Value, path: &str) -> Result<Geometry, MapError> {
    let obj = as_object(v, path)?;
    let kind = obj
        .get("type")
        .and_then(Value::as_str)
        .ok_or_else(|| semantic(format!("{path}.type"), "missing geometry type"))?;
    let coords = obj
        .get("coordinates")
        .ok_or_else(|| semantic(format!("{path}.coordinates"), "missing coordinates"))?;
    let cpath = format!("{path}.coordinates");
    let geometry = match kind {
        "Point" => Geometry {
            kind: GeometryKind::Point,
            coords: vec![parse_position(coords, &cpath)?],
        },
        "LineString" => Geometry {
            kind: GeometryKind::Polyline,
            coords: parse_positions(coords, &cpath)?,
        },
        "Polygon" => {
            let rings = as_array(coords, &cpath)?;
            if rings.is_empty() {
                return Err(semantic(cpath, "degenerate polygon: no rings"));
            }
            if rings.len() > 1 {
                return Err(semantic(cpath, "unsupported geometry: polygon holes"));
            }
            Geometry {
                kind: GeometryKind::Polygon,
                coords: parse_positions(&rings[0], &format!("{cpath}[0]"))?,
            }
        }
        other => {
            return Err(semantic(
                format!("{path}.type"),
                format!("unsupported geometry kind {other}"),
            ))
        }
    };
    geometry.normalized().map_err(|e| semantic(path, e.to_string()))
}

fn parse_feature(v: &Value, index: usize, path: &str) -> Result<Feature, MapError> {
    let obj = as_object(v, path)?;
    if obj.get("type").and_then(Value::as_str) != Some("Feature") {
        return Err(semantic(format!("{path}.type"), "expected \"Feature\""));
    }
    let geometry = parse_geometry(
        obj.get("geometry")
            .ok_or_else(|| semantic(format!("{path}.geometry"), "missing geometry"))?,
        &format!("{path}.geometry"),
    )?;
    let empty = Map::new();
    let props = match obj.get("properties") {
        None | Some(Value::Null) => &empty,
        Some(p) => as_object(p, &format!("{path}.properties"))?,
    };
    let ppath = format!("{path}.properties");

    let id = match opt_str(obj, "id", path)? {
        Some(id) => id,
        None => opt_str(props, "id", &ppath)?.unwrap_or_else(|| format!("f{}", index + 1)),
    };
    let name = opt_str(props, "name", &ppath)?.unwrap_or_default();
    let type_label = opt_str(props, "type", &ppath)?.unwrap_or_default();
    let sensory = opt_str(props, "style", &ppath)?;

    let overlaid = match props.get("overlaid") {
        None | Some(Value::Null) => Vec::new(),
        Some(v) => {
            let opath = format!("{ppath}.overlaid");
            as_object(v, &opath)?
                .iter()
                .map(|(k, val)| {
                    let value = match val {
                        Value::Number(n) => OverlaidValue::Number(n.as_f64().unwrap_or(f64::NAN)),
                        Value::String(s) => OverlaidValue::Category(s.clone()),
                        Value::Bool(b) => OverlaidValue::Category(if *b { "Yes" } else { "No" }.to_string()),
                        _ => return Err(semantic(format!("{opath}.{k}"), "expected a number or category")),
                    };
                    Ok((k.clone(), value))
                })
                .collect::<Result<Vec<_>, _>>()?
        }
    };

    let temporal = match props.get("temporal") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let tpath = format!("{ppath}.temporal");
            let mut series = BTreeMap::new();
            for (k, val) in as_object(v, &tpath)? {
                let date = NaiveDate::parse_from_str(k, "%Y-%m-%d")
                    .map_err(|_| semantic(format!("{tpath}.{k}"), "expected an ISO-8601 date (YYYY-MM-DD)"))?;
                series.insert(date, as_f64(val, &format!("{tpath}.{k}"))?);
            }
            Some(series)
        }
    };

    let extra = props
        .iter()
        .filter(|(k, _)| !matches!(k.as_str(), "id" | "name" | "type" | "style" | "overlaid" | "temporal"))
        .map(|(k, v)| (k.clone(), v.clone()))
        .collect();

    Ok(Feature {
        id,
        name,
        type_label,
        geometry,
        sensory,
        overlaid,
        temporal,
        extra,
    })
}

fn parse_legend(v: &Value) -> Result<Vec<SensoryStyle>, MapError> {
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for (i, sv) in as_array(v, "$.legend")?.iter().enumerate() {
        let path = format!("$.legend[{i}]");
        let obj = as_object(sv, &path)?;
        let style = SensoryStyle {
            id: req_str(obj, "id", &path)?,
            color_name: req_str(obj, "color_name", &path)?,
            pattern: opt_str(obj, "pattern", &path)?,
            notes: opt_str(obj, "notes", &path)?,
        };
        if !seen.insert(style.id.clone()) {
            return Err(semantic(path, format!("duplicate legend id \"{}\"", style.id)));
        }
        out.push(style);
    }
    Ok(out)
}

fn parse_routes(v: &Value, style_ids: &HashSet<&str>) -> Result<Vec<Route>, MapError> {
    let mut out: Vec<Route> = Vec::new();
    for (i, rv) in as_array(v, "$.routes")?.iter().enumerate() {
        let path = format!("$.routes[{i}]");
        let obj = as_object(rv, &path)?;
        let id = opt_str(obj, "id", &path)?.unwrap_or_else(|| format!("r{}", i + 1));
        if out.iter().any(|r| r.id == id) {
            return Err(semantic(path, format!("duplicate route id \"{id}\"")));
        }
        let coords = parse_positions(
            obj.get("path")
                .ok_or_else(|| semantic(format!("{path}.path"), "missing path"))?,
            &format!("{path}.path"),
        )?;
        let path_geom = Geometry::polyline(coords).map_err(|e| semantic(format!("{path}.path"), e.to_string()))?;
        let markers = match obj.get("markers") {
            None | Some(Value::Null) => Vec::new(),
            Some(m) => as_array(m, &format!("{path}.markers"))?
                .iter()
                .enumerate()
                .map(|(j, mv)| {
                    let mpath = format!("{path}.markers[{j}]");
                    let mo = as_object(mv, &mpath)?;
                    Ok(RouteMarker {
                        distance_m: as_f64(
                            mo.get("distance_m")
                                .ok_or_else(|| semantic(format!("{mpath}.distance_m"), "missing distance"))?,
                            &format!("{mpath}.distance_m"),
                        )?,
                        label: opt_str(mo, "label", &mpath)?.unwrap_or_default(),
                    })
                })
                .collect::<Result<Vec<_>, MapError>>()?,
        };
        let sensory = opt_str(obj, "style", &path)?;
        if let Some(s) = &sensory {
            if !style_ids.contains(s.as_str()) {
                return Err(semantic(
                    format!("{path}.style"),
                    format!("unknown legend reference \"{s}\""),
                ));
            }
        }
        out.push(Route {
            name: opt_str(obj, "name", &path)?.unwrap_or_else(|| id.clone()),
            id,
            path: path_geom,
            origin_label: opt_str(obj, "origin", &path)?.unwrap_or_default(),
            destination_label: opt_str(obj, "destination", &path)?.unwrap_or_default(),
            markers,
            sensory,
        });
    }
    Ok(out)
}

fn parse_graticules(v: &Value) -> Result<Vec<Graticule>, MapError> {
    as_array(v, "$.graticules")?
        .iter()
        .enumerate()
        .map(|(i, gv)| {
            let path = format!("$.graticules[{i}]");
            let obj = as_object(gv, &path)?;
            let kind = match obj.get("kind").and_then(Value::as_str) {
                Some("meridian") => GraticuleKind::Meridian,
                Some("parallel") => GraticuleKind::Parallel,
                _ => {
                    return Err(semantic(
                        format!("{path}.kind"),
                        "expected \"meridian\" or \"parallel\"",
                    ))
                }
            };
            let value = as_f64(
                obj.get("value")
                    .ok_or_else(|| semantic(format!("{path}.value"), "missing value"))?,
                &format!("{path}.value"),
            )?;
            let label = opt_str(obj, "label", &path)?.unwrap_or_else(|| default_graticule_label(kind, value));
            Ok(Graticule { kind, value, label })
        })
        .collect()
}

fn default_graticule_label(kind: GraticuleKind, value: f64) -> String {
    let hemi = match (kind, value < 0.0) {
        (GraticuleKind::Meridian, false) => "E",
        (GraticuleKind::Meridian, true) => "W",
        (GraticuleKind::Parallel, false) => "N",
        (GraticuleKind::Parallel, true) => "S",
    };
    format!("{} degrees {hemi}", super::format_data_number(value.abs()))
}

fn apply_capabilities(v: &Value, caps: &mut BaselineCapabilities) -> Result<(), MapError> {
    let obj = as_object(v, "$.capabilities")?;
    for (key, val) in obj {
        let flag = val
            .as_bool()
            .ok_or_else(|| semantic(format!("$.capabilities.{key}"), "expected a boolean"))?;
        match key.as_str() {
            "shows_coordinates" => caps.shows_coordinates = flag,
            "shows_temporal" => caps.shows_temporal = flag,
            "shows_overlaid" => caps.shows_overlaid = flag,
            "has_routes" => caps.has_routes = flag,
            "shows_legend" => caps.shows_legend = flag,
            _ => {}
        }
    }
    Ok(())
}
