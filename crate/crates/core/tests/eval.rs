mod common;

use std::collections::BTreeMap;

use common::{fixture, props, FIXTURES};
use mapverba::eval::{batch_table, evaluate, render_report, Criterion, EvalError, Group, ReportFormat, Verdict};
use mapverba::repr::{FeatureClaims, LandmarkField, PairClaims, RepresentationKind, RouteClaims};
use props::manifest;

#[test]
fn generated_passing_manifests_always_pass() {
    props::self_consistency(50).unwrap();
    for name in FIXTURES {
        let doc = fixture(name);
        for kind in props::PASSING {
            let r = evaluate(&doc, &manifest(&doc, kind)).unwrap();
            assert!(r.all_pass(), "{name} {kind}");
        }
    }
}

#[test]
fn verdicts_are_monotone_under_claim_mutations() {
    props::monotonicity(200).unwrap();
}

#[test]
fn not_applicable_tracks_baseline_capabilities() {
    props::na_soundness().unwrap();
    let pnw = fixture("pnw");
    let r = evaluate(&pnw, &manifest(&pnw, RepresentationKind::AudioDescription)).unwrap();
    let na: Vec<Criterion> = r
        .items
        .iter()
        .filter(|i| i.verdict == Verdict::Na)
        .map(|i| i.criterion)
        .collect();
    assert_eq!(na, [Criterion::RLandmark, Criterion::RSurvey, Criterion::RProminence]);
}

#[test]
fn na_items_leave_the_denominators() {
    let doc = fixture("four_rooms");
    let r = evaluate(&doc, &manifest(&doc, RepresentationKind::AudioDescription)).unwrap();
    let applicable = r
        .items
        .iter()
        .filter(|i| i.verdict != Verdict::Na && i.criterion.group() != Group::Purpose)
        .count();
    assert_eq!(r.score.equivalency.applicable as usize, applicable);
    assert_eq!(r.score.purpose.applicable, 3);
}

#[test]
fn a_missing_feature_fails_exactly_presence_and_survey() {
    props::missing_feature_propagation(20).unwrap();
}

#[test]
fn unknown_ids_are_errors_but_additions_are_ignored() {
    let doc = fixture("four_rooms");
    let mut m = manifest(&doc, RepresentationKind::AudioDescription);
    m.features.push(FeatureClaims {
        id: "legend-box".into(),
        addition: true,
        claims: BTreeMap::new(),
    });
    assert!(evaluate(&doc, &m).unwrap().all_pass());

    let mut bad = m.clone();
    bad.features.push(FeatureClaims {
        id: "basement".into(),
        addition: false,
        claims: BTreeMap::new(),
    });
    match evaluate(&doc, &bad) {
        Err(EvalError::UnknownIds(ids)) => assert_eq!(ids, ["basement"]),
        other => panic!("expected unknown ids, got {other:?}"),
    }
    let mut bad = m.clone();
    bad.pairs.push(PairClaims {
        a: "red".into(),
        b: "attic".into(),
        claims: BTreeMap::new(),
    });
    assert!(matches!(evaluate(&doc, &bad), Err(EvalError::UnknownIds(_))));
    let mut bad = m;
    bad.routes.push(RouteClaims {
        id: "r9".into(),
        claims: BTreeMap::new(),
    });
    assert!(matches!(evaluate(&doc, &bad), Err(EvalError::UnknownIds(_))));
}

#[test]
fn blank_evidence_is_no_claim() {
    let doc = fixture("four_rooms");
    let mut m = manifest(&doc, RepresentationKind::AudioDescription);
    m.features[0].claims.insert(LandmarkField::Name, "  ".into());
    let r = evaluate(&doc, &m).unwrap();
    assert_eq!(r.verdict(Criterion::LName), Verdict::Fail);
    assert!(r.item(Criterion::LName).justification.contains("partial: 3 of 4"));
}

#[test]
fn invalid_baselines_are_rejected() {
    let mut doc = fixture("four_rooms");
    let m = manifest(&doc, RepresentationKind::AudioDescription);
    doc.features[0].name.clear();
    assert!(matches!(evaluate(&doc, &m), Err(EvalError::InvalidBaseline(_))));
}

#[test]
fn legacy_manifests_fail_in_the_expected_direction() {
    let pnw = fixture("pnw");
    let table = evaluate(&pnw, &manifest(&pnw, RepresentationKind::Table)).unwrap();
    assert_eq!((table.score.purpose.passed, table.score.purpose.applicable), (1, 3));
    assert_eq!(table.score.purpose_pct, 33);
    let survey: Vec<Verdict> = table.group_items(Group::Survey).map(|i| i.verdict).collect();
    assert_eq!(survey, [Verdict::Fail; 5]);

    for name in FIXTURES {
        let doc = fixture(name);
        for kind in [RepresentationKind::ShortAlt, RepresentationKind::NearbySearch] {
            let r = evaluate(&doc, &manifest(&doc, kind)).unwrap();
            assert_eq!(r.score.purpose.passed, 0, "{name} {kind}");
        }
    }

    let campus = fixture("campus");
    let tbt = evaluate(&campus, &manifest(&campus, RepresentationKind::TurnByTurn)).unwrap();
    for c in [Criterion::RLandmark, Criterion::RSurvey, Criterion::RProminence] {
        assert_eq!(tbt.verdict(c), Verdict::Pass);
    }
    assert_eq!(tbt.verdict(Criterion::PGeneralized), Verdict::Fail);
    assert!(tbt.group_items(Group::Survey).all(|i| i.verdict == Verdict::Fail));
}

#[test]
fn report_formats() {
    let pnw = fixture("pnw");
    let r = evaluate(&pnw, &manifest(&pnw, RepresentationKind::Table)).unwrap();
    let md = render_report(&r, ReportFormat::Md);
    assert!(md.contains("Total Purpose Items Passed: 1/3"));
    assert!(md.contains("Route: N/A"));
    assert!(md.contains("Survey: 0/5"));
    assert!(md.contains("Purpose: 33.00%"));

    let csv = render_report(&r, ReportFormat::Csv);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "criterion,group,verdict,justification");
    assert_eq!(lines.len(), 20);
    assert!(lines[1].starts_with("P-generalized,Purpose,pass,"));
    assert!(lines[12].starts_with("R-landmark,Route,n/a,"));

    let json: serde_json::Value = serde_json::from_str(&render_report(&r, ReportFormat::JsonLike)).unwrap();
    assert_eq!(json["purpose"]["pct"], "33.00%");
    assert_eq!(json["items"].as_array().unwrap().len(), 19);
    assert_eq!(json["items"][0]["criterion"], "P-generalized");

    let ids: Vec<&str> = Criterion::ALL.iter().map(|c| c.id()).collect();
    assert_eq!(ids.len(), 19);
    assert_eq!(
        Criterion::ALL.iter().filter(|c| c.group() == Group::Landmark).count(),
        8
    );
    assert_eq!(Criterion::ALL.iter().filter(|c| c.group() == Group::Route).count(), 3);
    assert_eq!(Criterion::ALL.iter().filter(|c| c.group() == Group::Survey).count(), 5);
}

#[test]
fn batch_tables() {
    assert!(matches!(batch_table(&[]), Err(EvalError::EmptyBatch)));
    let doc = fixture("four_rooms");
    let r = evaluate(&doc, &manifest(&doc, RepresentationKind::MudMap)).unwrap();
    let t = batch_table(&[("MUD".into(), r)]).unwrap();
    assert_eq!(t.lines().count(), 3);
    assert!(t.contains("| MUD | mud-map | 100.00% | 100.00% |"));
}
