use serde_json::{json, Map, Value};

use super::audio::corpus_manifest;
use super::corpus::Corpus;
use super::manifest::RepresentationKind;
use super::{build_alt_grid, build_mud_map, precheck, BuildError, ReprOptions};
use crate::model::MapDocument;

/// Version of the navigator bundle layout. Readers must reject versions
/// they do not know; fields are only ever added within a version.
pub const BUNDLE_SCHEMA_VERSION: u32 = 1;

/// Self-contained navigator bundle: map metadata, the MUD room graph with
/// directed statements, the alt-text grid, every pair statement and the
/// manifests of the three interactive-capable representations.
pub fn export_bundle(doc: &MapDocument, options: &ReprOptions) -> Result<String, BuildError> {
    precheck(doc)?;
    let corpus = Corpus::build(doc, &options.describe);
    let (graph, mud_manifest) = build_mud_map(doc, options)?;
    let (grid, grid_manifest) = build_alt_grid(doc, options)?;
    let audio_manifest = corpus_manifest(RepresentationKind::AudioDescription, &corpus);

    let statement = |p: &crate::describe::PairStatement| {
        json!({
            "other": p.a_id,
            "other_name": doc.feature(&p.a_id).map(|f| f.name.as_str()).unwrap_or_default(),
            "distance_phrase": p.distance_phrase(),
            "topology": p.topo,
            "text": p.text,
        })
    };
    let rooms: Vec<Value> = graph
        .rooms
        .iter()
        .map(|room| {
            let index = doc.feature_index(&room.id).filter(|_| room.id != graph.start);
            let statements: Vec<Value> = index
                .map(|i| corpus.directed[i].iter().map(statement).collect())
                .unwrap_or_default();
            let absolute = index.and_then(|i| corpus.landmarks[i].absolute_text.clone());
            json!({
                "id": room.id,
                "title": room.title,
                "description": room.description,
                "features": room.features,
                "absolute": absolute,
                "statements": statements,
            })
        })
        .collect();
    let exits: Vec<Value> = graph
        .exits
        .iter()
        .map(|e| json!({"from": e.from, "direction": e.direction, "token": e.direction.token(), "to": e.to}))
        .collect();
    let cells: Vec<Value> = grid
        .cells
        .iter()
        .map(|c| json!({"row": c.row, "col": c.col, "features": c.features, "text": c.text}))
        .collect();
    let feature_texts: Map<String, Value> = grid
        .feature_texts
        .iter()
        .map(|(id, t)| (id.clone(), Value::String(t.clone())))
        .collect();
    let pairs: Vec<Value> = corpus
        .pairs
        .iter()
        .map(|p| {
            json!({
                "a": p.b_id,
                "b": p.a_id,
                "distance_phrase": p.distance_phrase(),
                "topology": p.topo,
                "text": p.text,
            })
        })
        .collect();
    let bundle = json!({
        "schema_version": BUNDLE_SCHEMA_VERSION,
        "map": {
            "title": doc.title,
            "crs": doc.crs.keyword(),
            "feature_count": doc.features.len(),
            "route_count": doc.routes.len(),
            "capabilities": doc.capabilities,
            "features": doc.features.iter().map(|f| json!({"id": f.id, "name": f.name, "type": f.type_label})).collect::<Vec<_>>(),
        },
        "mud": {
            "start": graph.start,
            "rooms": rooms,
            "exits": exits,
        },
        "grid": {
            "rows": grid.rows,
            "cols": grid.cols,
            "cell_size_m": grid.cell_size_m,
            "cursor_start": {"row": grid.cursor_start.0, "col": grid.cursor_start.1},
            "cells": cells,
            "feature_texts": feature_texts,
        },
        "pairs": pairs,
        "manifests": {
            "audio-description": audio_manifest,
            "mud-map": mud_manifest,
            "alt-grid": grid_manifest,
        },
    });
    let mut out = serde_json::to_string_pretty(&bundle).expect("bundle serializes");
    out.push('\n');
    Ok(out)
}
