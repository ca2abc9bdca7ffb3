use serde_json::{json, Map, Value};

use super::{Feature, Geometry, GeometryKind, MapDocument, OverlaidValue, Point, Route};

fn position(p: &Point) -> Value {
    json!([p.x, p.y])
}

fn geometry_value(g: &Geometry) -> Value {
    match g.kind {
        GeometryKind::Point => json!({"type": "Point", "coordinates": position(&g.coords[0])}),
        GeometryKind::Polyline => json!({
            "type": "LineString",
            "coordinates": g.coords.iter().map(position).collect::<Vec<_>>(),
        }),
        GeometryKind::Polygon => json!({
            "type": "Polygon",
            "coordinates": [g.coords.iter().map(position).collect::<Vec<_>>()],
        }),
    }
}

fn feature_value(f: &Feature) -> Value {
    let mut props = Map::new();
    props.insert("name".into(), json!(f.name));
    props.insert("type".into(), json!(f.type_label));
    if let Some(style) = &f.sensory {
        props.insert("style".into(), json!(style));
    }
    if !f.overlaid.is_empty() {
        let overlaid: Map<String, Value> = f
            .overlaid
            .iter()
            .map(|(k, v)| {
                let v = match v {
                    OverlaidValue::Number(n) => json!(n),
                    OverlaidValue::Category(s) => json!(s),
                };
                (k.clone(), v)
            })
            .collect();
        props.insert("overlaid".into(), Value::Object(overlaid));
    }
    if let Some(series) = &f.temporal {
        let temporal: Map<String, Value> = series
            .iter()
            .map(|(d, v)| (d.format("%Y-%m-%d").to_string(), json!(v)))
            .collect();
        props.insert("temporal".into(), Value::Object(temporal));
    }
    for (k, v) in &f.extra {
        props.insert(k.clone(), v.clone());
    }
    json!({
        "type": "Feature",
        "id": f.id,
        "geometry": geometry_value(&f.geometry),
        "properties": Value::Object(props),
    })
}

fn route_value(r: &Route) -> Value {
    let mut obj = Map::new();
    obj.insert("id".into(), json!(r.id));
    obj.insert("name".into(), json!(r.name));
    obj.insert(
        "path".into(),
        json!(r.path.coords.iter().map(position).collect::<Vec<_>>()),
    );
    obj.insert("origin".into(), json!(r.origin_label));
    obj.insert("destination".into(), json!(r.destination_label));
    obj.insert("markers".into(), json!(r.markers));
    if let Some(style) = &r.sensory {
        obj.insert("style".into(), json!(style));
    }
    Value::Object(obj)
}

/// Writes a document in the same format [`super::parse_map`] reads.
pub fn to_geojson(doc: &MapDocument) -> String {
    let value = json!({
        "type": "FeatureCollection",
        "title": doc.title,
        "crs": doc.crs.keyword(),
        "capabilities": doc.capabilities,
        "legend": doc.legend,
        "graticules": doc.graticules,
        "routes": doc.routes.iter().map(route_value).collect::<Vec<_>>(),
        "features": doc.features.iter().map(feature_value).collect::<Vec<_>>(),
    });
    let mut out = serde_json::to_string_pretty(&value).expect("map document serializes");
    out.push('\n');
    out
}
