use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::criteria::{Group, ItemResult, Verdict};
use super::evaluate::{EvalError, EvaluationReport};
use super::score::{format_pct, group_fraction};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Md,
    JsonLike,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "md" => Ok(ReportFormat::Md),
            "json-like" | "json" => Ok(ReportFormat::JsonLike),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(format!(
                "unknown report format {other:?} (expected md, json-like or csv)"
            )),
        }
    }
}

pub fn render_report(report: &EvaluationReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Md => render_md(report),
        ReportFormat::JsonLike => render_json(report),
        ReportFormat::Csv => render_csv(report),
    }
}

fn cell(s: &str) -> String {
    s.replace('|', "\\|").replace('\n', " ")
}

fn table(out: &mut String, items: &[&ItemResult]) {
    out.push_str("| Item | Criterion | Verdict | Justification |\n|---|---|---|---|\n");
    for i in items {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            i.criterion.id(),
            i.criterion.title(),
            i.verdict.word(),
            cell(&i.justification)
        );
    }
}

fn render_md(r: &EvaluationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Evaluation: {} ({})\n", r.title, r.kind);
    let _ = writeln!(out, "Total Purpose Items Passed: {}\n", r.score.purpose);
    let purpose: Vec<&ItemResult> = r.group_items(Group::Purpose).collect();
    table(&mut out, &purpose);
    out.push('\n');
    for g in [Group::Landmark, Group::Route, Group::Survey] {
        let items: Vec<&ItemResult> = r.group_items(g).collect();
        if items.iter().all(|i| i.verdict == Verdict::Na) {
            let _ = writeln!(out, "{}: N/A\n", g.title());
            continue;
        }
        let owned: Vec<ItemResult> = items.iter().map(|i| (*i).clone()).collect();
        let _ = writeln!(out, "{}: {}\n", g.title(), group_fraction(&owned, g));
        table(&mut out, &items);
        out.push('\n');
    }
    let _ = writeln!(out, "Total Equivalent Items Passed: {}\n", r.score.equivalency);
    let _ = writeln!(
        out,
        "Purpose: {}; Equivalency: {}",
        format_pct(r.score.purpose_pct),
        format_pct(r.score.equivalency_pct)
    );
    out
}

#[derive(Serialize)]
struct JsonItem<'a> {
    criterion: &'a str,
    group: Group,
    verdict: Verdict,
    justification: &'a str,
    evidence: &'a [String],
}

#[derive(Serialize)]
struct JsonGroup {
    passed: u32,
    applicable: u32,
    pct: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    title: &'a str,
    kind: String,
    purpose: JsonGroup,
    equivalency: JsonGroup,
    items: Vec<JsonItem<'a>>,
}

fn render_json(r: &EvaluationReport) -> String {
    let doc = JsonReport {
        title: &r.title,
        kind: r.kind.to_string(),
        purpose: JsonGroup {
            passed: r.score.purpose.passed,
            applicable: r.score.purpose.applicable,
            pct: format_pct(r.score.purpose_pct),
        },
        equivalency: JsonGroup {
            passed: r.score.equivalency.passed,
            applicable: r.score.equivalency.applicable,
            pct: format_pct(r.score.equivalency_pct),
        },
        items: r
            .items
            .iter()
            .map(|i| JsonItem {
                criterion: i.criterion.id(),
                group: i.criterion.group(),
                verdict: i.verdict,
                justification: &i.justification,
                evidence: &i.evidence,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
    s.push('\n');
    s
}

fn render_csv(r: &EvaluationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["criterion", "group", "verdict", "justification"])
        .expect("in-memory csv");
    for i in &r.items {
        w.write_record([
            i.criterion.id(),
            i.criterion.group().title(),
            i.verdict.word(),
            i.justification.as_str(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}

/// Summary table over several evaluated text maps.
pub fn batch_table(rows: &[(String, EvaluationReport)]) -> Result<String, EvalError> {
    if rows.is_empty() {
        return Err(EvalError::EmptyBatch);
    }
    let mut out = String::from("| Text Map | Kind | Purpose | Equivalency |\n|---|---|---|---|\n");
    for (label, r) in rows {
        let _ = writeln!(
            out,
            "| {} | {} | {} | {} |",
            cell(label),
            r.kind,
            format_pct(r.score.purpose_pct),
            format_pct(r.score.equivalency_pct)
        );
    }
    Ok(out)
}

/// Chart data: one CSV row per text map.
pub fn chart_csv(rows: &[(String, EvaluationReport)]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["label", "purpose_pct", "equivalency_pct"])
        .expect("in-memory csv");
    for (label, r) in rows {
        w.write_record([
            label.clone(),
            r.score.purpose_pct.to_string(),
            r.score.equivalency_pct.to_string(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("csv is utf-8")
}
