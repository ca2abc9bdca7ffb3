mod common;

use std::collections::BTreeSet;

use common::{fixture, props, random_maps, FIXTURES};
use mapverba::model::Geometry;
use mapverba::model::{parse_map, GeometryKind, MapDocument};
use mapverba::repr::{
    build_alt_grid, build_audio_description, build_legacy, build_mud_map, compile, export_bundle, Block, BuildError,
    LandmarkField, QueryCapability, ReprOptions, RepresentationKind, BUNDLE_SCHEMA_VERSION, OVERVIEW_ROOM,
};
use mapverba::spatial::{intersects, local_coords, Cardinal};
use serde_json::Value;

fn opts() -> ReprOptions {
    ReprOptions::default()
}

#[test]
fn mud_graph_properties_on_random_maps() {
    props::mud_suite(50).unwrap();
}

fn row_of_squares(n: usize) -> MapDocument {
    let features: Vec<String> = (0..n)
        .map(|i| {
            let x = i as f64 * 20.0;
            format!(
                r#"{{"type": "Feature", "id": "s{i}", "properties": {{"name": "Stall {i}"}},
                   "geometry": {{"type": "Polygon", "coordinates": [[[{x},0],[{x1},0],[{x1},5],[{x},5],[{x},0]]]}}}}"#,
                x1 = x + 5.0
            )
        })
        .collect();
    let text = format!(
        r#"{{"type": "FeatureCollection", "crs": "planar", "features": [{}]}}"#,
        features.join(",")
    );
    parse_map(text.as_bytes()).unwrap()
}

#[test]
fn collinear_rooms_shadow_each_other_but_stay_connected() {
    let doc = row_of_squares(7);
    props::mud_graph(&doc).unwrap();
    let (g, _) = build_mud_map(&doc, &opts()).unwrap();
    // Each stall can only take one east exit, so far stalls are reached by
    // walking through the near ones.
    assert_eq!(g.exit("s0", Cardinal::East), Some("s1"));
    assert_eq!(g.exit("s3", Cardinal::West), Some("s2"));
}

#[test]
fn four_rooms_mud_layout() {
    let doc = fixture("four_rooms");
    let (g, m) = build_mud_map(&doc, &opts()).unwrap();
    assert_eq!(g.start, OVERVIEW_ROOM);
    assert_eq!(g.rooms.len(), 5);
    assert_eq!(g.exit(OVERVIEW_ROOM, Cardinal::South), Some("yellow"));
    assert_eq!(g.exit("red", Cardinal::South), Some("green"));
    assert_eq!(g.exit("red", Cardinal::Southeast), Some("orange"));
    let red = g.room("red").unwrap();
    assert!(red
        .description
        .contains("Green Room is 23 m south (6 o'clock) from Red Room"));
    assert!(red
        .description
        .ends_with("Exits: northeast to Yellow Room, southeast to Orange Room and south to Green Room."));
    assert!(m.unsupported_evidence(&g.render()).is_empty());
}

#[test]
fn audio_description_structure() {
    let doc = fixture("four_rooms");
    let (tree, m) = build_audio_description(&doc, &opts()).unwrap();
    assert!(tree.levels_are_nested());
    let text = tree.render();
    let survey = text.split("## Survey").nth(1).unwrap();
    assert_eq!(survey.matches(" from ").count(), 6, "one statement per unordered pair");
    assert_eq!(m.pairs.len(), 6);

    let (tree, _) = build_audio_description(&fixture("campus"), &opts()).unwrap();
    let headings: Vec<&str> = tree
        .blocks
        .iter()
        .filter_map(|b| match b {
            Block::Heading { title, .. } => Some(title.as_str()),
            _ => None,
        })
        .collect();
    assert!(headings.contains(&"Routes:"));
    assert!(headings.contains(&"Route 1: 3321 Fillmore St to 1283 Fillmore St"));
}

#[test]
fn every_manifest_is_supported_by_its_artifact() {
    let mut docs: Vec<(String, MapDocument)> = FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect();
    docs.extend(random_maps(20, 3000).map(|(s, d)| (format!("seed {s}"), d)));
    for (label, doc) in &docs {
        for kind in RepresentationKind::ALL {
            match compile(doc, kind, &opts()) {
                Ok(c) => {
                    let missing = c.manifest.unsupported_evidence(&c.text);
                    assert!(missing.is_empty(), "{label} {kind}: {missing:?}");
                    assert_eq!(c.manifest.kind, kind);
                }
                Err(BuildError::NoRoutes) => assert!(doc.routes.is_empty() && kind == RepresentationKind::TurnByTurn),
                Err(e) => panic!("{label} {kind}: {e}"),
            }
        }
    }
}

#[test]
fn alt_grid_cells_list_exactly_the_features_they_meet() {
    for (seed, doc) in random_maps(10, 4000) {
        let (grid, _) = build_alt_grid(
            &doc,
            &ReprOptions {
                grid_divisions: 12,
                ..opts()
            },
        )
        .unwrap();
        assert_eq!(grid.cells.len(), grid.rows * grid.cols);
        for f in &doc.features {
            // Planar maps keep their coordinates in the grid frame; probe
            // the cell under every vertex.
            for p in &f.geometry.coords {
                if let Some((r, c)) = grid.locate(*p) {
                    let cell = grid.cell(r, c).unwrap();
                    assert!(
                        cell.features.contains(&f.id),
                        "seed {seed}: vertex {p:?} of {} in cell {r},{c}",
                        f.id
                    );
                }
            }
        }
        for cell in &grid.cells {
            let (x0, y0, x1, y1) = grid.cell_bounds(cell.row, cell.col);
            let rect = Geometry::rect(x0, y0, x1, y1).unwrap();
            for f in &doc.features {
                let g = Geometry {
                    kind: f.geometry.kind,
                    coords: local_coords(&f.geometry, doc.crs),
                };
                assert_eq!(
                    intersects(&g, &rect, 0.0),
                    cell.features.contains(&f.id),
                    "seed {seed} cell {},{}",
                    cell.row,
                    cell.col
                );
            }
            if cell.features.is_empty() {
                assert!(cell.text.contains(": empty. Nearest is "), "{}", cell.text);
            }
        }
    }
}

#[test]
fn alt_grid_flags_on_demand_queries() {
    let (grid, m) = build_alt_grid(&fixture("four_rooms"), &opts()).unwrap();
    for cap in [
        QueryCapability::PairwiseDistance,
        QueryCapability::PairwiseDirection,
        QueryCapability::PairwiseTopology,
    ] {
        assert!(m.has_capability(cap));
    }
    assert!(grid.cell(grid.cursor_start.0, grid.cursor_start.1).is_some());
    assert!(grid.render().contains("## Grid"));
}

#[test]
fn legacy_representations_are_lossy() {
    let doc = fixture("pnw");
    let table = build_legacy(&doc, RepresentationKind::Table, &opts()).unwrap();
    assert!(table.manifest.pairs.is_empty());
    assert!(table
        .manifest
        .features
        .iter()
        .all(|f| !f.claims.contains_key(&LandmarkField::Shape)));
    assert!(table.text.contains("Washington | state | 543 | 5"));

    let mut docs: Vec<(String, MapDocument)> = FIXTURES.iter().map(|n| (n.to_string(), fixture(n))).collect();
    docs.extend(random_maps(20, 5000).map(|(s, d)| (format!("seed {s}"), d)));
    for (label, doc) in &docs {
        let alt = build_legacy(doc, RepresentationKind::ShortAlt, &opts()).unwrap();
        assert!(alt.text.trim_end().chars().count() <= 140, "{label}: {}", alt.text);
        assert!(alt.manifest.features.iter().all(|f| f.addition));

        let nearby = build_legacy(doc, RepresentationKind::NearbySearch, &opts()).unwrap();
        assert!(nearby.manifest.features.len() <= 3);
        assert!(nearby.manifest.pairs.is_empty());
    }

    let campus = fixture("campus");
    let tbt = build_legacy(&campus, RepresentationKind::TurnByTurn, &opts()).unwrap();
    let named: BTreeSet<&str> = tbt.manifest.features.iter().map(|f| f.id.as_str()).collect();
    assert!(!named.contains("rec") && !named.contains("johnson"));
    assert!(named.contains("clay"));
    assert_eq!(
        build_legacy(&fixture("four_rooms"), RepresentationKind::TurnByTurn, &opts()),
        Err(BuildError::NoRoutes)
    );
    assert!(matches!(
        build_legacy(&campus, RepresentationKind::MudMap, &opts()),
        Err(BuildError::NotLegacy(RepresentationKind::MudMap))
    ));
}

#[test]
fn invalid_maps_are_not_built() {
    let mut doc = fixture("four_rooms");
    doc.features[0].name.clear();
    assert!(matches!(
        compile(&doc, RepresentationKind::AudioDescription, &opts()),
        Err(BuildError::Invalid(_))
    ));
    doc.features.clear();
    assert_eq!(
        compile(&doc, RepresentationKind::MudMap, &opts()),
        Err(BuildError::Empty)
    );
}

#[test]
fn bundle_contents_and_stability() {
    let doc = fixture("four_rooms");
    let text = export_bundle(&doc, &opts()).unwrap();
    assert_eq!(
        text,
        export_bundle(&doc, &opts()).unwrap(),
        "re-export is byte-identical"
    );
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["schema_version"], BUNDLE_SCHEMA_VERSION);
    assert_eq!(v["mud"]["rooms"].as_array().unwrap().len(), 5);
    assert_eq!(v["pairs"].as_array().unwrap().len(), 6);
    assert_eq!(v["map"]["feature_count"], 4);

    // Room texts are the rendered MUD text, verbatim.
    let (graph, _) = build_mud_map(&doc, &opts()).unwrap();
    let rendered = graph.render();
    for room in v["mud"]["rooms"].as_array().unwrap() {
        let block = format!(
            "## {}\n\n{}",
            room["title"].as_str().unwrap(),
            room["description"].as_str().unwrap()
        );
        assert!(rendered.contains(&block));
    }
    let red = v["mud"]["rooms"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["id"] == "red")
        .unwrap();
    let green = red["statements"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["other"] == "green")
        .unwrap();
    assert_eq!(green["distance_phrase"], "23 m south (6 o'clock)");
    for kind in ["audio-description", "mud-map", "alt-grid"] {
        assert_eq!(v["manifests"][kind]["kind"], kind);
    }
    for e in v["mud"]["exits"].as_array().unwrap() {
        assert!(Cardinal::from_token(e["token"].as_str().unwrap()).is_some());
    }
}

#[test]
fn geographic_maps_build_every_passing_design() {
    let doc = fixture("pnw");
    for kind in [
        RepresentationKind::AudioDescription,
        RepresentationKind::MudMap,
        RepresentationKind::AltGrid,
    ] {
        let c = compile(&doc, kind, &opts()).unwrap();
        assert!(c.text.contains("Washington"));
    }
    assert!(doc.features.iter().any(|f| f.geometry.kind == GeometryKind::Point));
}
