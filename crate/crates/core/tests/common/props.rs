//! Property checks shared by the test suites and the acceptance report.
//! Each returns a short summary on success and the first counterexample
//! on failure.

use std::collections::BTreeSet;

use mapverba::eval::{evaluate, Criterion, EvaluationReport, Verdict};
use mapverba::model::{Crs, MapDocument, Point};
use mapverba::repr::{
    build_mud_map, compile, LandmarkField, PairClaims, PairField, QueryCapability, ReprOptions, RepresentationKind,
    RepresentationManifest, RouteClaims, RouteField,
};
use mapverba::spatial::{
    bearing, convex_hull, haversine, point_distance, point_in_polygon, quantize_clock, Bearing, ClockResolution,
};
use rand::seq::SliceRandom;
use rand::Rng;

use super::{fixture, law_of_cosines, random_maps, rng, winding_number, FIXTURES};

pub type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($fmt)+));
        }
    };
}

pub const PASSING: [RepresentationKind; 3] = [
    RepresentationKind::AudioDescription,
    RepresentationKind::MudMap,
    RepresentationKind::AltGrid,
];

pub fn manifest(doc: &MapDocument, kind: RepresentationKind) -> RepresentationManifest {
    compile(doc, kind, &ReprOptions::default())
        .expect("map compiles")
        .manifest
}

fn random_point(r: &mut impl Rng, span: f64) -> Point {
    Point::new(r.gen_range(-span..span), r.gen_range(-span..span))
}

// ---- geometry -------------------------------------------------------------

pub fn planar_distance(n: usize) -> Check {
    let mut r = rng(1);
    for _ in 0..n {
        let (a, b) = (random_point(&mut r, 1e4), random_point(&mut r, 1e4));
        let (dx, dy) = (b.x - a.x, b.y - a.y);
        let expected = (dx * dx + dy * dy).sqrt();
        let got = point_distance(a, b, Crs::PlanarMeters);
        ensure!(
            (got - expected).abs() <= 1e-9 * expected,
            "{a:?} to {b:?}: {got} vs {expected}"
        );
    }
    Ok(format!("{n} planar distances within 1e-9 relative"))
}

pub fn bearing_antisymmetry(n: usize) -> Check {
    let mut r = rng(2);
    for _ in 0..n {
        let (a, b) = (random_point(&mut r, 1e4), random_point(&mut r, 1e4));
        let ab = bearing(a, b, Crs::PlanarMeters).map_err(|e| e.to_string())?;
        let ba = bearing(b, a, Crs::PlanarMeters).map_err(|e| e.to_string())?;
        ensure!(ab == ba.opposite(), "{a:?} {b:?}: {} vs {}", ab.degrees(), ba.degrees());
        let diff = (ab.degrees() - ba.degrees()).rem_euclid(360.0);
        ensure!(diff == 180.0, "{a:?} {b:?}: bearings differ by {diff}");
    }
    Ok(format!("{n} pairs exactly antisymmetric"))
}

pub fn ray_cast_vs_winding(n: usize) -> Check {
    let mut r = rng(3);
    let mut done = 0;
    while done < n {
        let cloud: Vec<Point> = (0..r.gen_range(3..12)).map(|_| random_point(&mut r, 100.0)).collect();
        let hull = convex_hull(&cloud);
        if hull.len() < 3 {
            continue;
        }
        let p = random_point(&mut r, 120.0);
        ensure!(
            point_in_polygon(p, &hull) == (winding_number(p, &hull) != 0),
            "point {p:?} in {hull:?}"
        );
        done += 1;
    }
    Ok(format!("{n} convex cases agree"))
}

pub fn equator_degree() -> Check {
    let (a, b) = (Point::new(0.0, 0.0), Point::new(1.0, 0.0));
    let (h, l) = (haversine(a, b), law_of_cosines(a, b));
    ensure!((h - 111_194.9).abs() <= 0.1, "haversine gives {h}");
    ensure!((l - 111_194.9).abs() <= 0.1, "law of cosines gives {l}");
    Ok(format!("haversine {h:.3} m, law of cosines {l:.3} m"))
}

// ---- quantization ---------------------------------------------------------

/// (degrees, half-hour phrase, hour phrase). Sector boundaries resolve
/// clockwise, so 15° reads as 1 o'clock at hour resolution.
pub const CLOCK_TABLE: [(f64, &str, &str); 24] = [
    (0.0, "12 o'clock", "12 o'clock"),
    (15.0, "12:30 o'clock", "1 o'clock"),
    (30.0, "1 o'clock", "1 o'clock"),
    (45.0, "1:30 o'clock", "2 o'clock"),
    (60.0, "2 o'clock", "2 o'clock"),
    (75.0, "2:30 o'clock", "3 o'clock"),
    (90.0, "3 o'clock", "3 o'clock"),
    (105.0, "3:30 o'clock", "4 o'clock"),
    (120.0, "4 o'clock", "4 o'clock"),
    (135.0, "4:30 o'clock", "5 o'clock"),
    (150.0, "5 o'clock", "5 o'clock"),
    (165.0, "5:30 o'clock", "6 o'clock"),
    (180.0, "6 o'clock", "6 o'clock"),
    (195.0, "6:30 o'clock", "7 o'clock"),
    (210.0, "7 o'clock", "7 o'clock"),
    (225.0, "7:30 o'clock", "8 o'clock"),
    (240.0, "8 o'clock", "8 o'clock"),
    (255.0, "8:30 o'clock", "9 o'clock"),
    (270.0, "9 o'clock", "9 o'clock"),
    (285.0, "9:30 o'clock", "10 o'clock"),
    (300.0, "10 o'clock", "10 o'clock"),
    (315.0, "10:30 o'clock", "11 o'clock"),
    (330.0, "11 o'clock", "11 o'clock"),
    (345.0, "11:30 o'clock", "12 o'clock"),
];

pub fn clock_table() -> Check {
    for (deg, half, hour) in CLOCK_TABLE {
        let b = Bearing::from_degrees(deg);
        let got_half = quantize_clock(b, ClockResolution::HalfHour).to_string();
        let got_hour = quantize_clock(b, ClockResolution::Hour).to_string();
        ensure!(got_half == half, "{deg}°: half-hour {got_half:?}, expected {half:?}");
        ensure!(got_hour == hour, "{deg}°: hour {got_hour:?}, expected {hour:?}");
    }
    Ok("24 bearings at both resolutions".into())
}

// ---- evaluator ------------------------------------------------------------

const LANDMARK_FIELDS: [LandmarkField; 10] = [
    LandmarkField::Geometry,
    LandmarkField::Sensory,
    LandmarkField::Name,
    LandmarkField::Type,
    LandmarkField::Shape,
    LandmarkField::Orientation,
    LandmarkField::Size,
    LandmarkField::Temporal,
    LandmarkField::Overlaid,
    LandmarkField::Absolute,
];
const PAIR_FIELDS: [PairField; 4] = [
    PairField::Distance,
    PairField::Direction,
    PairField::Topology,
    PairField::RelativeLocation,
];
const ROUTE_FIELDS: [RouteField; 3] = [RouteField::Landmark, RouteField::Survey, RouteField::Prominence];
const CAPS: [QueryCapability; 5] = [
    QueryCapability::PairwiseDistance,
    QueryCapability::PairwiseDirection,
    QueryCapability::PairwiseTopology,
    QueryCapability::AbsoluteLocation,
    QueryCapability::TemporalPlayback,
];

/// Adds one claim to `m`, returning false if there was nothing to add.
fn add_claim(m: &mut RepresentationManifest, doc: &MapDocument, r: &mut impl Rng) -> bool {
    match r.gen_range(0..4) {
        0 if !m.features.is_empty() => {
            let i = r.gen_range(0..m.features.len());
            let f = *LANDMARK_FIELDS.choose(r).unwrap();
            m.features[i].claims.insert(f, "added".into()).is_none()
        }
        1 => {
            let a = &doc.features.choose(r).unwrap().id;
            let b = &doc.features.choose(r).unwrap().id;
            let f = *PAIR_FIELDS.choose(r).unwrap();
            m.pairs.push(PairClaims {
                a: a.clone(),
                b: b.clone(),
                claims: [(f, "added".to_string())].into(),
            });
            true
        }
        2 if !doc.routes.is_empty() => {
            let f = *ROUTE_FIELDS.choose(r).unwrap();
            m.routes.push(RouteClaims {
                id: doc.routes[0].id.clone(),
                claims: [(f, "added".to_string())].into(),
            });
            true
        }
        _ => m.capabilities.insert(*CAPS.choose(r).unwrap()),
    }
}

/// Removes one claim from `m`, returning false if there was nothing to remove.
fn remove_claim(m: &mut RepresentationManifest, r: &mut impl Rng) -> bool {
    match r.gen_range(0..4) {
        0 if !m.features.is_empty() => {
            let i = r.gen_range(0..m.features.len());
            let keys: Vec<_> = m.features[i].claims.keys().copied().collect();
            keys.choose(r).map(|k| m.features[i].claims.remove(k)).is_some()
        }
        1 if !m.pairs.is_empty() => {
            let i = r.gen_range(0..m.pairs.len());
            let keys: Vec<_> = m.pairs[i].claims.keys().copied().collect();
            keys.choose(r).map(|k| m.pairs[i].claims.remove(k)).is_some()
        }
        2 if !m.routes.is_empty() => {
            let i = r.gen_range(0..m.routes.len());
            let keys: Vec<_> = m.routes[i].claims.keys().copied().collect();
            keys.choose(r).map(|k| m.routes[i].claims.remove(k)).is_some()
        }
        _ => {
            let caps: Vec<_> = m.capabilities.iter().copied().collect();
            caps.choose(r).map(|c| m.capabilities.remove(c)).is_some()
        }
    }
}

/// `more` has every claim of `less` and then some: nothing that passed
/// with fewer claims may fail with more, and applicability is unchanged.
fn monotone(less: &EvaluationReport, more: &EvaluationReport) -> Result<(), String> {
    for c in Criterion::ALL {
        let (l, m) = (less.verdict(c), more.verdict(c));
        ensure!((l == Verdict::Na) == (m == Verdict::Na), "{c}: applicability changed");
        ensure!(
            l != Verdict::Pass || m == Verdict::Pass,
            "{c}: passed with fewer claims, failed with more"
        );
    }
    ensure!(
        more.score.purpose.passed >= less.score.purpose.passed,
        "purpose score fell"
    );
    ensure!(
        more.score.equivalency.passed >= less.score.equivalency.passed,
        "equivalency score fell"
    );
    Ok(())
}

pub fn monotonicity(mutations: usize) -> Check {
    let maps: Vec<(u64, MapDocument)> = random_maps(20, 8000).collect();
    let mut r = rng(99);
    let mut done = 0;
    while done < mutations {
        let (seed, doc) = maps.choose(&mut r).unwrap();
        let kind = *RepresentationKind::ALL.choose(&mut r).unwrap();
        let Ok(c) = compile(doc, kind, &ReprOptions::default()) else {
            continue;
        };
        let before = evaluate(doc, &c.manifest).map_err(|e| e.to_string())?;
        let mut m = c.manifest.clone();
        let adding = r.gen_bool(0.5);
        let changed = if adding {
            add_claim(&mut m, doc, &mut r)
        } else {
            remove_claim(&mut m, &mut r)
        };
        if !changed {
            continue;
        }
        let after = evaluate(doc, &m).map_err(|e| e.to_string())?;
        let (less, more) = if adding { (&before, &after) } else { (&after, &before) };
        monotone(less, more).map_err(|e| format!("seed {seed} {kind}: {e}"))?;
        done += 1;
    }
    Ok(format!("{mutations} mutations"))
}

fn na_set(r: &EvaluationReport) -> BTreeSet<Criterion> {
    r.items
        .iter()
        .filter(|i| i.verdict == Verdict::Na)
        .map(|i| i.criterion)
        .collect()
}

type Toggle = fn(&mut MapDocument);

pub fn na_soundness() -> Check {
    let toggles: [(&str, Toggle, Criterion); 4] = [
        ("legend", |d| d.capabilities.shows_legend = false, Criterion::LSensory),
        (
            "overlaid",
            |d| d.capabilities.shows_overlaid = false,
            Criterion::LOverlaid,
        ),
        (
            "coordinates",
            |d| d.capabilities.shows_coordinates = false,
            Criterion::SAbsoluteLocation,
        ),
        (
            "temporal",
            |d| {
                d.capabilities.shows_temporal = false;
                d.temporal_domain = None;
                for f in &mut d.features {
                    f.temporal = None;
                }
            },
            Criterion::LTemporal,
        ),
    ];
    let routes = [Criterion::RLandmark, Criterion::RSurvey, Criterion::RProminence];
    let mut cases = 0;
    for name in FIXTURES {
        let doc = fixture(name);
        for kind in RepresentationKind::ALL {
            let Ok(c) = compile(&doc, kind, &ReprOptions::default()) else {
                continue;
            };
            let base = evaluate(&doc, &c.manifest).map_err(|e| e.to_string())?;
            let base_na = na_set(&base);
            ensure!(
                routes
                    .iter()
                    .all(|r| base_na.contains(r) != doc.capabilities.has_routes),
                "{name} {kind}: route items applicable iff the map has routes"
            );
            for (what, toggle, item) in toggles {
                let mut d = doc.clone();
                toggle(&mut d);
                let r = evaluate(&d, &c.manifest).map_err(|e| e.to_string())?;
                let mut expected = base_na.clone();
                expected.insert(item);
                ensure!(
                    na_set(&r) == expected,
                    "{name} {kind} without {what}: n/a set {:?}",
                    na_set(&r)
                );
                for c in Criterion::ALL.into_iter().filter(|c| !expected.contains(c)) {
                    ensure!(
                        r.verdict(c) == base.verdict(c),
                        "{name} {kind} without {what}: {c} changed"
                    );
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} capability toggles"))
}

pub fn missing_feature_propagation(maps: u64) -> Check {
    let mut docs: Vec<(String, MapDocument)> = FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect();
    docs.extend(random_maps(maps, 9000).map(|(s, d)| (format!("seed {s}"), d)));
    let mut r = rng(5);
    let mut cases = 0;
    for (label, doc) in &docs {
        for kind in PASSING {
            let mut m = manifest(doc, kind);
            let victim = doc.features.choose(&mut r).unwrap().id.clone();
            m.features.retain(|f| f.id != victim);
            let report = evaluate(doc, &m).map_err(|e| e.to_string())?;
            let failed: Vec<Criterion> = report
                .items
                .iter()
                .filter(|i| i.verdict == Verdict::Fail)
                .map(|i| i.criterion)
                .collect();
            let mut expected = vec![
                Criterion::PGeneralized,
                Criterion::SDistance,
                Criterion::SDirection,
                Criterion::STopology,
                Criterion::SRelativeLocation,
            ];
            if doc.capabilities.shows_coordinates {
                expected.push(Criterion::SAbsoluteLocation);
            }
            ensure!(failed == expected, "{label} {kind} without {victim}: failed {failed:?}");
            cases += 1;
        }
    }
    Ok(format!("{cases} removals"))
}

pub fn self_consistency(maps: u64) -> Check {
    for (seed, doc) in random_maps(maps, 7000) {
        for kind in PASSING {
            let r = evaluate(&doc, &manifest(&doc, kind)).map_err(|e| e.to_string())?;
            let failed: Vec<&str> = r
                .items
                .iter()
                .filter(|i| i.verdict == Verdict::Fail)
                .map(|i| i.criterion.id())
                .collect();
            ensure!(failed.is_empty(), "seed {seed} {kind}: failed {failed:?}");
            ensure!(
                r.score.purpose_pct == 100 && r.score.equivalency_pct == 100,
                "seed {seed} {kind}: not 100/100"
            );
        }
    }
    Ok(format!("{maps} maps x 3 designs"))
}

// ---- MUD graphs -----------------------------------------------------------

pub fn mud_graph(doc: &MapDocument) -> Result<(), String> {
    let (g, _) = build_mud_map(doc, &ReprOptions::default()).map_err(|e| e.to_string())?;
    ensure!(g.is_symmetric(), "exits are not symmetric");
    ensure!(g.is_connected(), "some room is unreachable");
    ensure!(
        g.rooms.len() == doc.features.len() + 1,
        "{} rooms for {} features",
        g.rooms.len(),
        doc.features.len()
    );
    let covered: BTreeSet<&str> = g
        .rooms
        .iter()
        .flat_map(|r| r.features.iter().map(String::as_str))
        .collect();
    let all: BTreeSet<&str> = doc.features.iter().map(|f| f.id.as_str()).collect();
    ensure!(
        covered == all,
        "features without rooms: {:?}",
        all.difference(&covered).collect::<Vec<_>>()
    );
    let mut slots = BTreeSet::new();
    for e in &g.exits {
        ensure!(
            slots.insert((e.from.clone(), e.direction)),
            "two {} exits from {}",
            e.direction,
            e.from
        );
        ensure!(g.room(&e.to).is_some() && e.from != e.to, "bad exit {e:?}");
        ensure!(
            g.exit(&e.to, e.direction.opposite()) == Some(e.from.as_str()),
            "no way back along {e:?}"
        );
    }
    let again = build_mud_map(doc, &ReprOptions::default())
        .map_err(|e| e.to_string())?
        .0;
    ensure!(again.render() == g.render(), "two builds differ");
    Ok(())
}

pub fn mud_suite(maps: u64) -> Check {
    for (seed, doc) in random_maps(maps, 1000) {
        mud_graph(&doc).map_err(|e| format!("seed {seed}: {e}"))?;
    }
    for name in FIXTURES {
        mud_graph(&fixture(name)).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{maps} random maps and {} fixtures", FIXTURES.len()))
}
