//! Scores a text map's manifest against the baseline map using the
//! purpose/equivalency rubric.

mod criteria;
mod evaluate;
mod report;
mod score;

pub use criteria::{Criterion, Group, ItemResult, Verdict};
pub use evaluate::{evaluate, EvalError, EvaluationReport};
pub use report::{batch_table, chart_csv, render_report, ReportFormat};
pub use score::{format_pct, group_fraction, pct, score, Fraction, Score, ScoreError};
