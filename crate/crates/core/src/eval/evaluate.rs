use crate::model::{validate, Feature, GeometryKind, MapDocument, Violation};
use crate::repr::{LandmarkField, PairField, QueryCapability, RepresentationKind, RepresentationManifest, RouteField};

use super::criteria::{Criterion, Group, ItemResult, Verdict};
use super::score::{score, Score};

#[derive(Debug, thiserror::Error)]
pub enum EvalError {
    #[error("manifest references ids that are not in the baseline map: {}", .0.join(", "))]
    UnknownIds(Vec<String>),
    #[error("baseline map is invalid: {}", .0.iter().map(|v| v.message.as_str()).collect::<Vec<_>>().join("; "))]
    InvalidBaseline(Vec<Violation>),
    #[error("evaluation results are incomplete: {0}")]
    Incomplete(String),
    #[error("nothing to tabulate")]
    EmptyBatch,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct EvaluationReport {
    pub title: String,
    pub kind: RepresentationKind,
    pub items: Vec<ItemResult>,
    pub score: Score,
}

impl EvaluationReport {
    pub fn item(&self, c: Criterion) -> &ItemResult {
        self.items
            .iter()
            .find(|i| i.criterion == c)
            .expect("reports hold every criterion")
    }

    pub fn verdict(&self, c: Criterion) -> Verdict {
        self.item(c).verdict
    }

    /// True when no applicable item failed.
    pub fn all_pass(&self) -> bool {
        self.items.iter().all(|i| i.verdict != Verdict::Fail)
    }

    pub fn group_items(&self, g: Group) -> impl Iterator<Item = &ItemResult> {
        self.items.iter().filter(move |i| i.criterion.group() == g)
    }
}

/// Scores a manifest against its baseline map.
///
/// Records flagged as additions are ignored; any other record naming a
/// feature or route the baseline does not have is an error.
pub fn evaluate(doc: &MapDocument, manifest: &RepresentationManifest) -> Result<EvaluationReport, EvalError> {
    let violations = validate(doc);
    if !violations.is_empty() {
        return Err(EvalError::InvalidBaseline(violations));
    }
    check_ids(doc, manifest)?;

    let ctx = Context::new(doc, manifest);
    let items: Vec<ItemResult> = Criterion::ALL.iter().map(|&c| ctx.judge(c)).collect();
    let score = score(&items).map_err(|e| EvalError::Incomplete(e.to_string()))?;
    Ok(EvaluationReport {
        title: if manifest.title.is_empty() {
            doc.title.clone()
        } else {
            manifest.title.clone()
        },
        kind: manifest.kind,
        items,
        score,
    })
}

fn check_ids(doc: &MapDocument, m: &RepresentationManifest) -> Result<(), EvalError> {
    let mut unknown: Vec<String> = Vec::new();
    let mut note = |id: &str| {
        if !unknown.iter().any(|u| u == id) {
            unknown.push(id.to_string());
        }
    };
    for f in m.features.iter().filter(|f| !f.addition) {
        if doc.feature(&f.id).is_none() {
            note(&f.id);
        }
    }
    for p in &m.pairs {
        for id in [&p.a, &p.b] {
            if doc.feature(id).is_none() {
                note(id);
            }
        }
    }
    for r in &m.routes {
        if !doc.routes.iter().any(|x| x.id == r.id) {
            note(&r.id);
        }
    }
    if unknown.is_empty() {
        Ok(())
    } else {
        Err(EvalError::UnknownIds(unknown))
    }
}

struct Context<'a> {
    doc: &'a MapDocument,
    m: &'a RepresentationManifest,
    present: Vec<&'a Feature>,
    missing: Vec<&'a Feature>,
}

fn item(c: Criterion, verdict: Verdict, justification: String, evidence: Vec<String>) -> ItemResult {
    ItemResult {
        criterion: c,
        verdict,
        justification,
        evidence,
    }
}

fn na(c: Criterion, why: &str) -> ItemResult {
    item(c, Verdict::Na, why.to_string(), Vec::new())
}

fn ids(fs: &[&Feature]) -> String {
    fs.iter().map(|f| f.id.as_str()).collect::<Vec<_>>().join(", ")
}

impl<'a> Context<'a> {
    fn new(doc: &'a MapDocument, m: &'a RepresentationManifest) -> Self {
        let (present, missing) = doc.features.iter().partition(|f| m.feature(&f.id).is_some());
        Context {
            doc,
            m,
            present,
            missing,
        }
    }

    fn judge(&self, c: Criterion) -> ItemResult {
        let caps = self.doc.capabilities;
        match c {
            Criterion::PGeneralized => self.generalized(),
            Criterion::PSpatialInfo => self.per_feature(
                c,
                "shape, size and orientation",
                |f| spatial_fields(f).iter().all(|&fld| self.m.claims_feature(&f.id, fld)),
                |_| true,
            ),
            Criterion::PSpatialRel => self.spatial_relationships(),
            Criterion::LSensory if !caps.shows_legend => na(c, "the baseline has no legend"),
            Criterion::LSensory => self.landmark(c, LandmarkField::Sensory, |_| true),
            Criterion::LName => self.landmark(c, LandmarkField::Name, |_| true),
            Criterion::LType => self.landmark(c, LandmarkField::Type, |_| true),
            Criterion::LShape => self.landmark(c, LandmarkField::Shape, |f| f.geometry.kind != GeometryKind::Point),
            Criterion::LOrientation => self.landmark(c, LandmarkField::Orientation, |f| {
                f.geometry.kind == GeometryKind::Polygon
            }),
            Criterion::LSize => self.landmark(c, LandmarkField::Size, |f| f.geometry.kind != GeometryKind::Point),
            Criterion::LTemporal if !caps.shows_temporal => na(c, "the baseline shows no temporal data"),
            Criterion::LTemporal => {
                if self.m.has_capability(QueryCapability::TemporalPlayback) && !self.present.is_empty() {
                    item(
                        c,
                        Verdict::Pass,
                        "temporal values are available through playback".into(),
                        Vec::new(),
                    )
                } else {
                    self.landmark(c, LandmarkField::Temporal, |f| f.temporal.is_some())
                }
            }
            Criterion::LOverlaid if !caps.shows_overlaid => na(c, "the baseline shows no overlaid information"),
            Criterion::LOverlaid => self.landmark(c, LandmarkField::Overlaid, |f| !f.overlaid.is_empty()),
            Criterion::RLandmark => self.route(c, RouteField::Landmark),
            Criterion::RSurvey => self.route(c, RouteField::Survey),
            Criterion::RProminence => self.route(c, RouteField::Prominence),
            Criterion::SDistance => self.survey_pairs(c, &[(PairField::Distance, QueryCapability::PairwiseDistance)]),
            Criterion::SDirection => {
                self.survey_pairs(c, &[(PairField::Direction, QueryCapability::PairwiseDirection)])
            }
            Criterion::STopology => self.survey_pairs(c, &[(PairField::Topology, QueryCapability::PairwiseTopology)]),
            Criterion::SRelativeLocation => self.survey_pairs(
                c,
                &[
                    (PairField::Distance, QueryCapability::PairwiseDistance),
                    (PairField::Direction, QueryCapability::PairwiseDirection),
                ],
            ),
            Criterion::SAbsoluteLocation => self.absolute(),
        }
    }

    fn generalized(&self) -> ItemResult {
        let c = Criterion::PGeneralized;
        let n = self.doc.features.len();
        if self.missing.is_empty() {
            item(
                c,
                Verdict::Pass,
                format!("all {n} baseline features are present"),
                Vec::new(),
            )
        } else {
            item(
                c,
                Verdict::Fail,
                format!(
                    "{} of {n} baseline features are missing: {}",
                    self.missing.len(),
                    ids(&self.missing)
                ),
                self.missing.iter().map(|f| f.id.clone()).collect(),
            )
        }
    }

    /// Requires `ok` for every present feature that `applies`. Fails when
    /// no baseline feature is present at all.
    fn per_feature(
        &self,
        c: Criterion,
        what: &str,
        ok: impl Fn(&Feature) -> bool,
        applies: impl Fn(&Feature) -> bool,
    ) -> ItemResult {
        if self.present.is_empty() {
            return item(c, Verdict::Fail, "no baseline features are present".into(), Vec::new());
        }
        let relevant: Vec<&Feature> = self.present.iter().copied().filter(|f| applies(f)).collect();
        if relevant.is_empty() {
            return item(
                c,
                Verdict::Pass,
                format!("no present feature calls for {what}"),
                Vec::new(),
            );
        }
        let failing: Vec<&Feature> = relevant.iter().copied().filter(|f| !ok(f)).collect();
        let passing = relevant.len() - failing.len();
        if failing.is_empty() {
            item(
                c,
                Verdict::Pass,
                format!("{what} given for all {} applicable features", relevant.len()),
                relevant.iter().map(|f| f.id.clone()).collect(),
            )
        } else {
            let partial = if passing > 0 {
                format!("; partial: {passing} of {} features pass", relevant.len())
            } else {
                String::new()
            };
            item(
                c,
                Verdict::Fail,
                format!("{what} missing for {}{partial}", ids(&failing)),
                failing.iter().map(|f| f.id.clone()).collect(),
            )
        }
    }

    fn landmark(&self, c: Criterion, field: LandmarkField, applies: impl Fn(&Feature) -> bool) -> ItemResult {
        let what = c.title().to_lowercase();
        self.per_feature(c, &what, |f| self.m.claims_feature(&f.id, field), applies)
    }

    fn pair_covered(&self, a: &str, b: &str, fields: &[(PairField, QueryCapability)]) -> bool {
        fields
            .iter()
            .all(|&(fld, cap)| self.m.has_capability(cap) || self.m.claims_pair(a, b, fld))
    }

    /// Unordered pairs among `fs` lacking coverage.
    fn uncovered_pairs(&self, fs: &[&Feature], fields: &[(PairField, QueryCapability)]) -> (usize, Vec<String>) {
        let mut total = 0;
        let mut gaps = Vec::new();
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                total += 1;
                if !self.pair_covered(&fs[i].id, &fs[j].id, fields) {
                    gaps.push(format!("{}/{}", fs[i].id, fs[j].id));
                }
            }
        }
        (total, gaps)
    }

    fn spatial_relationships(&self) -> ItemResult {
        let c = Criterion::PSpatialRel;
        if self.present.is_empty() {
            return item(c, Verdict::Fail, "no baseline features are present".into(), Vec::new());
        }
        let fields = [
            (PairField::Distance, QueryCapability::PairwiseDistance),
            (PairField::Direction, QueryCapability::PairwiseDirection),
        ];
        pair_verdict(
            c,
            "distance and direction",
            self.uncovered_pairs(&self.present, &fields),
        )
    }

    fn route(&self, c: Criterion, field: RouteField) -> ItemResult {
        if !self.doc.capabilities.has_routes || self.doc.routes.is_empty() {
            return na(c, "the baseline has no routes");
        }
        let failing: Vec<&str> = self
            .doc
            .routes
            .iter()
            .filter(|r| !self.m.claims_route(&r.id, field))
            .map(|r| r.id.as_str())
            .collect();
        let n = self.doc.routes.len();
        let what = c.title().to_lowercase();
        if failing.is_empty() {
            item(
                c,
                Verdict::Pass,
                format!("{what} given for all {n} routes"),
                self.doc.routes.iter().map(|r| r.id.clone()).collect(),
            )
        } else {
            let passing = n - failing.len();
            let partial = if passing > 0 {
                format!("; partial: {passing} of {n} routes pass")
            } else {
                String::new()
            };
            item(
                c,
                Verdict::Fail,
                format!("{what} missing for {}{partial}", failing.join(", ")),
                failing.iter().map(|s| s.to_string()).collect(),
            )
        }
    }

    fn survey_pairs(&self, c: Criterion, fields: &[(PairField, QueryCapability)]) -> ItemResult {
        if !self.missing.is_empty() {
            return missing_fail(c, &self.missing);
        }
        let all: Vec<&Feature> = self.doc.features.iter().collect();
        let what = c.title().to_lowercase();
        pair_verdict(c, &what, self.uncovered_pairs(&all, fields))
    }

    fn absolute(&self) -> ItemResult {
        let c = Criterion::SAbsoluteLocation;
        if !self.doc.capabilities.shows_coordinates {
            return na(c, "the baseline shows no coordinates");
        }
        if !self.missing.is_empty() {
            return missing_fail(c, &self.missing);
        }
        if self.m.has_capability(QueryCapability::AbsoluteLocation) {
            return item(
                c,
                Verdict::Pass,
                "absolute locations are available on request".into(),
                Vec::new(),
            );
        }
        let all: Vec<&Feature> = self.doc.features.iter().collect();
        let failing: Vec<&Feature> = all
            .iter()
            .copied()
            .filter(|f| !self.m.claims_feature(&f.id, LandmarkField::Absolute))
            .collect();
        if failing.is_empty() {
            item(
                c,
                Verdict::Pass,
                format!("absolute location given for all {} features", all.len()),
                Vec::new(),
            )
        } else {
            item(
                c,
                Verdict::Fail,
                format!("absolute location missing for {}", ids(&failing)),
                failing.iter().map(|f| f.id.clone()).collect(),
            )
        }
    }
}

fn spatial_fields(f: &Feature) -> &'static [LandmarkField] {
    match f.geometry.kind {
        GeometryKind::Point => &[],
        GeometryKind::Polyline => &[LandmarkField::Shape, LandmarkField::Size],
        GeometryKind::Polygon => &[LandmarkField::Shape, LandmarkField::Size, LandmarkField::Orientation],
    }
}

fn missing_fail(c: Criterion, missing: &[&Feature]) -> ItemResult {
    item(
        c,
        Verdict::Fail,
        format!("cannot relate features that are missing: {}", ids(missing)),
        missing.iter().map(|f| f.id.clone()).collect(),
    )
}

fn pair_verdict(c: Criterion, what: &str, (total, gaps): (usize, Vec<String>)) -> ItemResult {
    if gaps.is_empty() {
        item(
            c,
            Verdict::Pass,
            format!("{what} covered for all {total} pairs"),
            Vec::new(),
        )
    } else {
        let passing = total - gaps.len();
        let partial = if passing > 0 {
            format!("; partial: {passing} of {total} pairs pass")
        } else {
            String::new()
        };
        let shown: Vec<&str> = gaps.iter().take(5).map(String::as_str).collect();
        let more = if gaps.len() > 5 {
            format!(" and {} more", gaps.len() - 5)
        } else {
            String::new()
        };
        item(
            c,
            Verdict::Fail,
            format!("{what} missing for {}{more}{partial}", shown.join(", ")),
            gaps,
        )
    }
}
