use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RepresentationKind {
    AudioDescription,
    MudMap,
    AltGrid,
    Table,
    TurnByTurn,
    ShortAlt,
    NearbySearch,
    /// A hand-encoded manifest for a text map produced elsewhere.
    External,
}

impl RepresentationKind {
    /// Every kind the compiler can build.
    pub const ALL: [RepresentationKind; 7] = [
        RepresentationKind::AudioDescription,
        RepresentationKind::MudMap,
        RepresentationKind::AltGrid,
        RepresentationKind::Table,
        RepresentationKind::TurnByTurn,
        RepresentationKind::ShortAlt,
        RepresentationKind::NearbySearch,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            RepresentationKind::AudioDescription => "audio-description",
            RepresentationKind::MudMap => "mud-map",
            RepresentationKind::AltGrid => "alt-grid",
            RepresentationKind::Table => "table",
            RepresentationKind::TurnByTurn => "turn-by-turn",
            RepresentationKind::ShortAlt => "short-alt",
            RepresentationKind::NearbySearch => "nearby-search",
            RepresentationKind::External => "external",
        }
    }
}

impl fmt::Display for RepresentationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown representation kind {0:?}")]
pub struct UnknownKind(pub String);

impl FromStr for RepresentationKind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RepresentationKind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| UnknownKind(s.to_string()))
    }
}

/// Per-feature information classes a representation can communicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LandmarkField {
    /// The feature's primitive kind (point, line, polygon).
    Geometry,
    Sensory,
    Name,
    Type,
    Shape,
    Orientation,
    Size,
    Temporal,
    Overlaid,
    /// Coordinates and graticule offsets.
    Absolute,
    /// Distance from a single search point; not a pairwise relation.
    QueryDistance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairField {
    Distance,
    Direction,
    Topology,
    RelativeLocation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RouteField {
    Landmark,
    Survey,
    Prominence,
}

/// Relations an interactive representation answers on demand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QueryCapability {
    PairwiseDistance,
    PairwiseDirection,
    PairwiseTopology,
    AbsoluteLocation,
    TemporalPlayback,
}

/// Claims are keyed by field; the value is the evidence text, which must
/// occur verbatim in the rendered artifact. Blank evidence is no claim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeatureClaims {
    pub id: String,
    /// Records for things that are not baseline features (summaries,
    /// annotations). Ignored by the evaluator.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub addition: bool,
    #[serde(default)]
    pub claims: BTreeMap<LandmarkField, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairClaims {
    pub a: String,
    pub b: String,
    #[serde(default)]
    pub claims: BTreeMap<PairField, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteClaims {
    pub id: String,
    #[serde(default)]
    pub claims: BTreeMap<RouteField, String>,
}

/// Machine-checkable record of what a text map communicates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationManifest {
    pub schema_version: u32,
    pub kind: RepresentationKind,
    #[serde(default)]
    pub title: String,
    /// Path of the baseline map. Relative paths resolve against the
    /// manifest's directory.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baseline_ref: Option<String>,
    /// Path of the rendered artifact the evidence comes from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_text_ref: Option<String>,
    #[serde(default)]
    pub features: Vec<FeatureClaims>,
    #[serde(default)]
    pub pairs: Vec<PairClaims>,
    #[serde(default)]
    pub routes: Vec<RouteClaims>,
    #[serde(default)]
    pub capabilities: BTreeSet<QueryCapability>,
}

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("manifest is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported manifest schema version {0}")]
    SchemaVersion(u32),
}

fn present(evidence: Option<&String>) -> bool {
    evidence.is_some_and(|e| !e.trim().is_empty())
}

impl RepresentationManifest {
    pub fn new(kind: RepresentationKind, title: impl Into<String>) -> Self {
        RepresentationManifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            kind,
            title: title.into(),
            baseline_ref: None,
            source_text_ref: None,
            features: Vec::new(),
            pairs: Vec::new(),
            routes: Vec::new(),
            capabilities: BTreeSet::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, ManifestError> {
        let m: RepresentationManifest = serde_json::from_str(text)?;
        if m.schema_version != MANIFEST_SCHEMA_VERSION {
            return Err(ManifestError::SchemaVersion(m.schema_version));
        }
        Ok(m)
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// The non-addition record for feature `id`.
    pub fn feature(&self, id: &str) -> Option<&FeatureClaims> {
        self.features.iter().find(|f| !f.addition && f.id == id)
    }

    pub fn claims_feature(&self, id: &str, field: LandmarkField) -> bool {
        self.features
            .iter()
            .filter(|f| !f.addition && f.id == id)
            .any(|f| present(f.claims.get(&field)))
    }

    /// Whether an (unordered) pair record claims `field`.
    pub fn claims_pair(&self, a: &str, b: &str, field: PairField) -> bool {
        self.pairs
            .iter()
            .filter(|p| (p.a == a && p.b == b) || (p.a == b && p.b == a))
            .any(|p| present(p.claims.get(&field)))
    }

    pub fn claims_route(&self, id: &str, field: RouteField) -> bool {
        self.routes
            .iter()
            .filter(|r| r.id == id)
            .any(|r| present(r.claims.get(&field)))
    }

    pub fn has_capability(&self, c: QueryCapability) -> bool {
        self.capabilities.contains(&c)
    }

    /// Every evidence string, in record order.
    pub fn evidence(&self) -> Vec<&str> {
        let f = self.features.iter().flat_map(|r| r.claims.values());
        let p = self.pairs.iter().flat_map(|r| r.claims.values());
        let r = self.routes.iter().flat_map(|r| r.claims.values());
        f.chain(p).chain(r).map(String::as_str).collect()
    }

    /// Evidence strings that do not occur in `artifact`.
    pub fn unsupported_evidence<'a>(&'a self, artifact: &str) -> Vec<&'a str> {
        self.evidence()
            .into_iter()
            .filter(|e| !e.trim().is_empty() && !artifact.contains(e))
            .collect()
    }
}
