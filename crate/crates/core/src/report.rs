//! Deterministic, machine-readable verification reports.
//!
//! A report is a list of named law checks with a three-way status. Rows are
//! sorted by law name before serialization so the byte stream depends only on
//! the inputs and the seed, never on execution order. Wall-clock time is kept
//! out of the serialized form for the same reason; it is carried separately
//! for human-facing summaries.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    /// The law held on every tested instance.
    Pass,
    /// A counterexample was found; the witness serializes it.
    Fail,
    /// The law's precondition does not hold here (for example a symplectic
    /// law on an algebra with nontrivial center); the witness says why.
    Unsupported,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub law: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub algebra: String,
    pub seed: u64,
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: std::time::Duration,
}

impl SuiteReport {
    pub fn new(suite: &str, algebra: &str, seed: u64) -> Self {
        SuiteReport {
            suite: suite.to_owned(),
            algebra: algebra.to_owned(),
            seed,
            checks: Vec::new(),
            elapsed: std::time::Duration::ZERO,
        }
    }

    pub fn pass(&mut self, law: &str) {
        self.checks.push(Check { law: law.to_owned(), status: CheckStatus::Pass, witness: None });
    }

    pub fn fail(&mut self, law: &str, witness: String) {
        self.checks.push(Check {
            law: law.to_owned(),
            status: CheckStatus::Fail,
            witness: Some(witness),
        });
    }

    pub fn unsupported(&mut self, law: &str, reason: String) {
        self.checks.push(Check {
            law: law.to_owned(),
            status: CheckStatus::Unsupported,
            witness: Some(reason),
        });
    }

    /// Records a pass, or a fail carrying the first counterexample.
    pub fn law(&mut self, law: &str, outcome: Result<(), String>) {
        match outcome {
            Ok(()) => self.pass(law),
            Err(witness) => self.fail(law, witness),
        }
    }

    /// Sorts rows into the canonical order. Law names are unique within a
    /// suite, so the order is total.
    pub fn finish(mut self) -> Self {
        self.checks.sort_by(|a, b| a.law.cmp(&b.law));
        self
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    /// (pass, fail, unsupported) row counts.
    pub fn tally(&self) -> (usize, usize, usize) {
        let mut t = (0, 0, 0);
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => t.0 += 1,
                CheckStatus::Fail => t.1 += 1,
                CheckStatus::Unsupported => t.2 += 1,
            }
        }
        t
    }
}

/// Serializes reports as one pretty-printed JSON document with a trailing
/// newline: the canonical byte stream for determinism comparisons.
pub fn reports_to_json(reports: &[SuiteReport]) -> String {
    let mut out = serde_json::to_string_pretty(reports).expect("reports serialize");
    out.push('\n');
    out
}
