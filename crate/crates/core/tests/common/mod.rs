//! Shared helpers: fixture loading and a seeded random map generator.
#![allow(dead_code)]

use std::f64::consts::TAU;
use std::path::PathBuf;

use mapverba::model::{parse_map, MapDocument, Point};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.geojson"))
}

pub fn fixture(name: &str) -> MapDocument {
    let bytes = std::fs::read(fixture_path(name)).expect("fixture exists");
    parse_map(&bytes).expect("fixture parses")
}

pub mod props;

pub const FIXTURES: [&str; 3] = ["four_rooms", "pnw", "campus"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Slot spacing for random maps; every feature stays within 40 m of its
/// slot center, so features never touch.
const SLOT: f64 = 100.0;

const TYPES: [&str; 5] = ["building", "park", "lake", "road", "stop"];
const COLORS: [(&str, &str); 4] = [("a", "red"), ("b", "green"), ("c", "blue"), ("d", "gray")];

fn ring_json(points: &[Point]) -> Value {
    let mut ring: Vec<Value> = points.iter().map(|p| json!([p.x, p.y])).collect();
    ring.push(json!([points[0].x, points[0].y]));
    json!([ring])
}

fn random_geometry(rng: &mut ChaCha8Rng, c: Point) -> Value {
    let at = |r: f64, a: f64| Point::new(c.x + r * a.sin(), c.y + r * a.cos());
    match rng.gen_range(0..7) {
        0 => json!({"type": "Point", "coordinates": [c.x, c.y]}),
        1 => {
            let n = rng.gen_range(2..5);
            let pts: Vec<Value> = (0..n)
                .map(|_| json!([c.x + rng.gen_range(-35.0..35.0), c.y + rng.gen_range(-35.0..35.0)]))
                .collect();
            json!({"type": "LineString", "coordinates": pts})
        }
        2 => {
            let (w, h) = (rng.gen_range(4.0..35.0), rng.gen_range(4.0..35.0));
            let pts = [
                Point::new(c.x - w, c.y - h),
                Point::new(c.x + w, c.y - h),
                Point::new(c.x + w, c.y + h),
                Point::new(c.x - w, c.y + h),
            ];
            json!({"type": "Polygon", "coordinates": ring_json(&pts)})
        }
        3 => {
            let r = rng.gen_range(5.0..35.0);
            let turn = rng.gen_range(0.0..TAU);
            let pts: Vec<Point> = (0..3)
                .map(|k| at(r * rng.gen_range(0.5..1.0), turn + k as f64 * TAU / 3.0))
                .collect();
            json!({"type": "Polygon", "coordinates": ring_json(&pts)})
        }
        4 => {
            let n = rng.gen_range(5..=8);
            let r = rng.gen_range(5.0..35.0);
            let turn = rng.gen_range(0.0..TAU);
            let pts: Vec<Point> = (0..n).map(|k| at(r, turn - k as f64 * TAU / n as f64)).collect();
            json!({"type": "Polygon", "coordinates": ring_json(&pts)})
        }
        5 => {
            let r = rng.gen_range(5.0..35.0);
            let pts: Vec<Point> = (0..24).map(|k| at(r, -(k as f64) * TAU / 24.0)).collect();
            json!({"type": "Polygon", "coordinates": ring_json(&pts)})
        }
        _ => {
            // Star-shaped, hence simple.
            let n = rng.gen_range(6..12);
            let pts: Vec<Point> = (0..n)
                .map(|k| at(rng.gen_range(8.0..35.0), -(k as f64) * TAU / n as f64))
                .collect();
            json!({"type": "Polygon", "coordinates": ring_json(&pts)})
        }
    }
}

/// GeoJSON text for a planar map of `n` separated features.
pub fn random_map_json(seed: u64, n: usize) -> String {
    let mut rng = rng(seed);
    let side = 4usize;
    let mut slots: Vec<usize> = (0..side * side).collect();
    slots.shuffle(&mut rng);
    let with_legend = rng.gen_bool(0.6);
    let with_overlaid = rng.gen_bool(0.4);
    let with_temporal = rng.gen_bool(0.3);
    let with_route = rng.gen_bool(0.4);
    let with_graticules = rng.gen_bool(0.5);

    let features: Vec<Value> = (0..n)
        .map(|i| {
            let s = slots[i];
            let c = Point::new(
                (s % side) as f64 * SLOT + rng.gen_range(-3.0..3.0),
                (s / side) as f64 * SLOT + rng.gen_range(-3.0..3.0),
            );
            let mut props = json!({
                "name": format!("Feature {i}"),
                "type": TYPES[rng.gen_range(0..TYPES.len())],
            });
            if with_legend {
                props["style"] = json!(COLORS[rng.gen_range(0..COLORS.len())].0);
            }
            if with_overlaid && rng.gen_bool(0.7) {
                props["overlaid"] = json!({"Visitors": rng.gen_range(0..1000)});
            }
            if with_temporal && rng.gen_bool(0.7) {
                props["temporal"] = json!({
                    "2022-01-01": rng.gen_range(0..100),
                    "2022-06-01": rng.gen_range(0..100),
                });
            }
            json!({
                "type": "Feature",
                "id": format!("f{i}"),
                "geometry": random_geometry(&mut rng, c),
                "properties": props,
            })
        })
        .collect();

    let mut root = json!({
        "type": "FeatureCollection",
        "title": format!("Random map {seed}"),
        "crs": "planar",
        "features": features,
    });
    if with_legend {
        root["legend"] = COLORS
            .iter()
            .map(|(id, color)| json!({"id": id, "color_name": color}))
            .collect();
    }
    if with_graticules {
        root["graticules"] = json!([
            {"kind": "meridian", "value": 150.0, "label": "the middle meridian"},
            {"kind": "parallel", "value": 150.0, "label": "the middle parallel"},
        ]);
    }
    if with_route {
        let a = Point::new(rng.gen_range(-20.0..320.0), rng.gen_range(-20.0..320.0));
        let b = Point::new(rng.gen_range(-20.0..320.0), rng.gen_range(-20.0..320.0));
        let m = Point::new(rng.gen_range(-20.0..320.0), rng.gen_range(-20.0..320.0));
        root["routes"] = json!([{
            "id": "r1",
            "name": "Loop trail",
            "path": [[a.x, a.y], [m.x, m.y], [b.x + 1.0, b.y]],
            "origin": "the gate",
            "destination": "the lookout",
        }]);
    }
    serde_json::to_string_pretty(&root).expect("json")
}

pub fn random_map(seed: u64, n: usize) -> MapDocument {
    parse_map(random_map_json(seed, n).as_bytes()).expect("generated maps parse")
}

/// Seeded maps with 2 to 10 features.
pub fn random_maps(count: u64, base_seed: u64) -> impl Iterator<Item = (u64, MapDocument)> {
    (0..count).map(move |k| {
        let seed = base_seed + k;
        let n = rng(seed ^ 0x5eed).gen_range(2..=10);
        (seed, random_map(seed, n))
    })
}

/// Winding number of `ring` (closed or open) around `p`; nonzero inside.
pub fn winding_number(p: Point, ring: &[Point]) -> i32 {
    let n = if ring.first() == ring.last() {
        ring.len() - 1
    } else {
        ring.len()
    };
    let mut w = 0;
    for i in 0..n {
        let (a, b) = (ring[i], ring[(i + 1) % n]);
        let cross = (b.x - a.x) * (p.y - a.y) - (p.x - a.x) * (b.y - a.y);
        if a.y <= p.y {
            if b.y > p.y && cross > 0.0 {
                w += 1;
            }
        } else if b.y <= p.y && cross < 0.0 {
            w -= 1;
        }
    }
    w
}

/// Great-circle distance by the spherical law of cosines.
pub fn law_of_cosines(a: Point, b: Point) -> f64 {
    let (p1, p2) = (a.y.to_radians(), b.y.to_radians());
    let dl = (b.x - a.x).to_radians();
    let c = (p1.sin() * p2.sin() + p1.cos() * p2.cos() * dl.cos()).clamp(-1.0, 1.0);
    mapverba::spatial::EARTH_RADIUS_M * c.acos()
}
