use std::collections::BTreeMap;

use super::corpus::route_claims;
use super::manifest::{FeatureClaims, LandmarkField, RepresentationKind, RepresentationManifest};
use super::{precheck, BuildError, ReprOptions};
use crate::describe::describe_route;
use crate::describe::format::format_length;
use crate::model::{MapDocument, OverlaidValue};
use crate::spatial::{centroid, point_distance};

/// Longest text a short alternative may have.
pub const SHORT_ALT_MAX_CHARS: usize = 140;

#[derive(Debug, Clone, PartialEq)]
pub struct LegacyOutput {
    pub text: String,
    pub manifest: RepresentationManifest,
}

fn record(id: &str, claims: impl IntoIterator<Item = (LandmarkField, String)>) -> FeatureClaims {
    FeatureClaims {
        id: id.to_string(),
        addition: false,
        claims: claims.into_iter().collect::<BTreeMap<_, _>>(),
    }
}

/// Name, type and thematic columns; nothing spatial.
fn table(doc: &MapDocument) -> LegacyOutput {
    let mut vars: Vec<&str> = Vec::new();
    for f in &doc.features {
        for (k, _) in &f.overlaid {
            if !vars.contains(&k.as_str()) {
                vars.push(k);
            }
        }
    }
    let mut header = vec!["Name", "Type"];
    header.extend(vars.iter().copied());
    let mut lines = vec![doc.title.clone(), header.join(" | ")];
    let mut manifest = RepresentationManifest::new(RepresentationKind::Table, doc.title.clone());
    for f in &doc.features {
        let mut cells = vec![f.name.clone(), f.type_label.clone()];
        for v in &vars {
            cells.push(
                f.overlaid
                    .iter()
                    .find(|(k, _)| k == v)
                    .map_or(String::new(), |(_, val): &(String, OverlaidValue)| val.to_string()),
            );
        }
        let row = cells.join(" | ");
        let mut claims = vec![(LandmarkField::Name, row.clone()), (LandmarkField::Type, row.clone())];
        if !f.overlaid.is_empty() {
            claims.push((LandmarkField::Overlaid, row.clone()));
        }
        manifest.features.push(record(&f.id, claims));
        lines.push(row);
    }
    LegacyOutput {
        text: lines.join("\n") + "\n",
        manifest,
    }
}

/// Route narratives only; features appear by name where the route meets
/// them.
fn turn_by_turn(doc: &MapDocument, options: &ReprOptions) -> Result<LegacyOutput, BuildError> {
    if doc.routes.is_empty() {
        return Err(BuildError::NoRoutes);
    }
    let corpus_routes: Vec<_> = doc
        .routes
        .iter()
        .map(|r| describe_route(r, doc, &options.describe))
        .collect();
    let mut manifest = RepresentationManifest::new(RepresentationKind::TurnByTurn, doc.title.clone());
    let mut text = String::from("Routes:\n");
    for r in &corpus_routes {
        text.push_str(&format!(
            "\n{}\n{}\n{}\n",
            r.prominence_heading, r.landmark_section, r.survey_section
        ));
    }
    for f in &doc.features {
        if corpus_routes
            .iter()
            .any(|r| r.encounters.iter().any(|e| e.feature_id == f.id))
        {
            manifest
                .features
                .push(record(&f.id, [(LandmarkField::Name, f.name.clone())]));
        }
    }
    manifest.routes = route_claims(&corpus_routes);
    Ok(LegacyOutput { text, manifest })
}

/// A single summary line of at most 140 characters.
fn short_alt(doc: &MapDocument) -> LegacyOutput {
    let n = doc.features.len();
    let tail = format!(": a map of {n} feature{}.", if n == 1 { "" } else { "s" });
    let room = SHORT_ALT_MAX_CHARS.saturating_sub(tail.chars().count());
    let title: String = if doc.title.chars().count() > room {
        let mut t: String = doc.title.chars().take(room.saturating_sub(1)).collect();
        t.push('…');
        t
    } else {
        doc.title.clone()
    };
    let text = format!("{title}{tail}");
    let mut manifest = RepresentationManifest::new(RepresentationKind::ShortAlt, doc.title.clone());
    manifest.features.push(FeatureClaims {
        id: "summary".into(),
        addition: true,
        claims: [(LandmarkField::Name, text.clone())].into_iter().collect(),
    });
    LegacyOutput {
        text: text + "\n",
        manifest,
    }
}

/// The nearest features to one search point, with their distance from it.
fn nearby_search(doc: &MapDocument, options: &ReprOptions) -> LegacyOutput {
    let query = options
        .query_point
        .unwrap_or_else(|| centroid(&doc.features[0].geometry));
    let mut ranked: Vec<(f64, usize)> = doc
        .features
        .iter()
        .enumerate()
        .map(|(i, f)| (point_distance(query, centroid(&f.geometry), doc.crs), i))
        .collect();
    ranked.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    ranked.truncate(options.nearby_results);
    let mut manifest = RepresentationManifest::new(RepresentationKind::NearbySearch, doc.title.clone());
    let mut lines = vec![format!("Places near the search point on {}:", doc.title)];
    for (rank, (d, i)) in ranked.iter().enumerate() {
        let f = &doc.features[*i];
        let distance = format!("{} away", format_length(*d));
        let line = format!("{}. {} ({}), {distance}", rank + 1, f.name, f.type_label);
        manifest.features.push(record(
            &f.id,
            [
                (LandmarkField::Name, f.name.clone()),
                (LandmarkField::Type, format!("({})", f.type_label)),
                (LandmarkField::QueryDistance, distance),
            ],
        ));
        lines.push(line);
    }
    LegacyOutput {
        text: lines.join("\n") + "\n",
        manifest,
    }
}

/// Lossy representations modelled on widely used map alternatives.
pub fn build_legacy(
    doc: &MapDocument,
    kind: RepresentationKind,
    options: &ReprOptions,
) -> Result<LegacyOutput, BuildError> {
    precheck(doc)?;
    match kind {
        RepresentationKind::Table => Ok(table(doc)),
        RepresentationKind::TurnByTurn => turn_by_turn(doc, options),
        RepresentationKind::ShortAlt => Ok(short_alt(doc)),
        RepresentationKind::NearbySearch => Ok(nearby_search(doc, options)),
        other => Err(BuildError::NotLegacy(other)),
    }
}
