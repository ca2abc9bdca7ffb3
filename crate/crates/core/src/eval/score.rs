use std::fmt;

use serde::Serialize;

use super::criteria::{Criterion, Group, ItemResult, Verdict};

/// Passed over applicable items.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Fraction {
    pub passed: u32,
    pub applicable: u32,
}

impl Fraction {
    /// Percentage rounded half-up to a whole number; 100 when nothing
    /// applies.
    pub fn pct(self) -> u32 {
        pct(self.passed, self.applicable)
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.passed, self.applicable)
    }
}

pub fn pct(passed: u32, applicable: u32) -> u32 {
    if applicable == 0 {
        return 100;
    }
    let (p, a) = (passed as u64, applicable as u64);
    ((200 * p + a) / (2 * a)) as u32
}

/// "33.00%".
pub fn format_pct(p: u32) -> String {
    format!("{p}.00%")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Score {
    pub purpose: Fraction,
    pub equivalency: Fraction,
    pub purpose_pct: u32,
    pub equivalency_pct: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScoreError {
    #[error("no result for {0}")]
    Missing(&'static str),
    #[error("more than one result for {0}")]
    Duplicate(&'static str),
}

pub fn group_fraction(items: &[ItemResult], g: Group) -> Fraction {
    let applicable = items
        .iter()
        .filter(|i| i.criterion.group() == g && i.verdict != Verdict::Na);
    Fraction {
        passed: applicable.clone().filter(|i| i.verdict == Verdict::Pass).count() as u32,
        applicable: applicable.count() as u32,
    }
}

/// Aggregates item results; every criterion must appear exactly once.
pub fn score(items: &[ItemResult]) -> Result<Score, ScoreError> {
    for c in Criterion::ALL {
        match items.iter().filter(|i| i.criterion == c).count() {
            0 => return Err(ScoreError::Missing(c.id())),
            1 => {}
            _ => return Err(ScoreError::Duplicate(c.id())),
        }
    }
    let purpose = group_fraction(items, Group::Purpose);
    let eq = [Group::Landmark, Group::Route, Group::Survey].map(|g| group_fraction(items, g));
    let equivalency = Fraction {
        passed: eq.iter().map(|f| f.passed).sum(),
        applicable: eq.iter().map(|f| f.applicable).sum(),
    };
    Ok(Score {
        purpose,
        equivalency,
        purpose_pct: purpose.pct(),
        equivalency_pct: equivalency.pct(),
    })
}
