//! Text-map representations and their manifests.
//!
//! Passing designs (audio description, MUD map, alt-text grid) share one
//! [`Corpus`] of description text. Legacy builders reproduce the lossy
//! information classes of tables, turn-by-turn directions, short alt text
//! and nearby search.

mod audio;
mod bundle;
mod corpus;
mod grid;
mod legacy;
mod manifest;
mod mud;

pub use audio::{build_audio_description, Block, DocumentTree};
pub use bundle::{export_bundle, BUNDLE_SCHEMA_VERSION};
pub use corpus::Corpus;
pub use grid::{build_alt_grid, AltGrid, GridCell};
pub use legacy::{build_legacy, LegacyOutput};
pub use manifest::{
    FeatureClaims, LandmarkField, ManifestError, PairClaims, PairField, QueryCapability, RepresentationKind,
    RepresentationManifest, RouteClaims, RouteField, UnknownKind, MANIFEST_SCHEMA_VERSION,
};
pub use mud::{build_mud_map, Exit, Room, RoomGraph, OVERVIEW_ROOM};

use crate::describe::DescribeOptions;
use crate::model::{validate, MapDocument, Point, Violation};

/// Default number of grid cells along the extent diagonal.
pub const DEFAULT_GRID_DIVISIONS: u32 = 32;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReprOptions {
    pub describe: DescribeOptions,
    /// Alt-grid cell size is the extent diagonal divided by this.
    pub grid_divisions: u32,
    /// Nearby-search query point; defaults to the first feature's center.
    pub query_point: Option<Point>,
    /// Number of results a nearby search returns.
    pub nearby_results: usize,
}

impl Default for ReprOptions {
    fn default() -> Self {
        ReprOptions {
            describe: DescribeOptions::default(),
            grid_divisions: DEFAULT_GRID_DIVISIONS,
            query_point: None,
            nearby_results: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BuildError {
    #[error("map is invalid: {}", .0.iter().map(|v| format!("{}: {}", v.path, v.message)).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
    #[error("map has no features")]
    Empty,
    #[error("turn-by-turn directions need at least one route, and the map has no routes")]
    NoRoutes,
    #[error("{0} is not a legacy representation")]
    NotLegacy(RepresentationKind),
}

pub(crate) fn precheck(doc: &MapDocument) -> Result<(), BuildError> {
    let violations = validate(doc);
    if !violations.is_empty() {
        return Err(BuildError::Invalid(violations));
    }
    if doc.features.is_empty() {
        return Err(BuildError::Empty);
    }
    Ok(())
}

/// A built representation: the rendered artifact and its manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct Compiled {
    pub text: String,
    pub manifest: RepresentationManifest,
}

/// Builds and renders any representation kind.
pub fn compile(doc: &MapDocument, kind: RepresentationKind, options: &ReprOptions) -> Result<Compiled, BuildError> {
    let (text, manifest) = match kind {
        RepresentationKind::AudioDescription => {
            let (tree, m) = build_audio_description(doc, options)?;
            (tree.render(), m)
        }
        RepresentationKind::MudMap => {
            let (graph, m) = build_mud_map(doc, options)?;
            (graph.render(), m)
        }
        RepresentationKind::AltGrid => {
            let (grid, m) = build_alt_grid(doc, options)?;
            (grid.render(), m)
        }
        legacy => {
            let out = build_legacy(doc, legacy, options)?;
            (out.text, out.manifest)
        }
    };
    Ok(Compiled { text, manifest })
}
