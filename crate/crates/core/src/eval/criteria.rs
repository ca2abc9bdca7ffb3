use std::fmt;

use serde::{Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Purpose,
    Landmark,
    Route,
    Survey,
}

impl Group {
    pub fn title(self) -> &'static str {
        match self {
            Group::Purpose => "Purpose",
            Group::Landmark => "Landmark",
            Group::Route => "Route",
            Group::Survey => "Survey",
        }
    }
}

/// The rubric items in table order: 3 purpose items, then 8 landmark, 3
/// route and 5 survey equivalency items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Criterion {
    PGeneralized,
    PSpatialInfo,
    PSpatialRel,
    LSensory,
    LName,
    LType,
    LShape,
    LOrientation,
    LSize,
    LTemporal,
    LOverlaid,
    RLandmark,
    RSurvey,
    RProminence,
    SDistance,
    SDirection,
    STopology,
    SRelativeLocation,
    SAbsoluteLocation,
}

impl Criterion {
    pub const ALL: [Criterion; 19] = [
        Criterion::PGeneralized,
        Criterion::PSpatialInfo,
        Criterion::PSpatialRel,
        Criterion::LSensory,
        Criterion::LName,
        Criterion::LType,
        Criterion::LShape,
        Criterion::LOrientation,
        Criterion::LSize,
        Criterion::LTemporal,
        Criterion::LOverlaid,
        Criterion::RLandmark,
        Criterion::RSurvey,
        Criterion::RProminence,
        Criterion::SDistance,
        Criterion::SDirection,
        Criterion::STopology,
        Criterion::SRelativeLocation,
        Criterion::SAbsoluteLocation,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Criterion::PGeneralized => "P-generalized",
            Criterion::PSpatialInfo => "P-spatial-info",
            Criterion::PSpatialRel => "P-spatial-rel",
            Criterion::LSensory => "L-sensory",
            Criterion::LName => "L-name",
            Criterion::LType => "L-type",
            Criterion::LShape => "L-shape",
            Criterion::LOrientation => "L-orientation",
            Criterion::LSize => "L-size",
            Criterion::LTemporal => "L-temporal",
            Criterion::LOverlaid => "L-overlaid",
            Criterion::RLandmark => "R-landmark",
            Criterion::RSurvey => "R-survey",
            Criterion::RProminence => "R-prominence",
            Criterion::SDistance => "S-distance",
            Criterion::SDirection => "S-direction",
            Criterion::STopology => "S-topology",
            Criterion::SRelativeLocation => "S-relative-location",
            Criterion::SAbsoluteLocation => "S-absolute-location",
        }
    }

    pub fn from_id(id: &str) -> Option<Criterion> {
        Criterion::ALL.into_iter().find(|c| c.id() == id)
    }

    pub fn title(self) -> &'static str {
        match self {
            Criterion::PGeneralized => "Generalized",
            Criterion::PSpatialInfo => "Spatial information",
            Criterion::PSpatialRel => "Spatial relationships",
            Criterion::LSensory => "Sensory characteristics",
            Criterion::LName => "Name",
            Criterion::LType => "Type",
            Criterion::LShape => "Shape",
            Criterion::LOrientation => "Orientation",
            Criterion::LSize => "Size",
            Criterion::LTemporal => "Temporal",
            Criterion::LOverlaid => "Overlaid information",
            Criterion::RLandmark => "Landmark information",
            Criterion::RSurvey => "Survey information",
            Criterion::RProminence => "Prominence",
            Criterion::SDistance => "Distance",
            Criterion::SDirection => "Direction",
            Criterion::STopology => "Topology",
            Criterion::SRelativeLocation => "Relative location",
            Criterion::SAbsoluteLocation => "Absolute location",
        }
    }

    pub fn group(self) -> Group {
        match self.id().as_bytes()[0] {
            b'P' => Group::Purpose,
            b'L' => Group::Landmark,
            b'R' => Group::Route,
            _ => Group::Survey,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl Serialize for Criterion {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Na,
}

impl Verdict {
    pub fn word(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Na => "n/a",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemResult {
    pub criterion: Criterion,
    pub verdict: Verdict,
    pub justification: String,
    /// Feature, pair or route references the verdict rests on.
    pub evidence: Vec<String>,
}
