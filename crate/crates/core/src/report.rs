//! Verification reports shared by the law checks and the command line.

use std::collections::BTreeMap;
use std::fmt::Display;

use serde::Serialize;

/// Stored failure messages are capped; the count is always exact.
const MAX_STORED_FAILURES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub law: String,
    pub bound: BTreeMap<String, i64>,
    pub cases_checked: u64,
    pub failures: Vec<String>,
    #[serde(skip)]
    failure_count: u64,
}

impl Report {
    pub fn new(law: impl Into<String>) -> Self {
        Report {
            law: law.into(),
            bound: BTreeMap::new(),
            cases_checked: 0,
            failures: Vec::new(),
            failure_count: 0,
        }
    }

    pub fn with_bound(mut self, key: &str, value: i64) -> Self {
        self.bound.insert(key.to_string(), value);
        self
    }

    pub fn case(&mut self) {
        self.cases_checked += 1;
    }

    pub fn cases(&mut self, n: u64) {
        self.cases_checked += n;
    }

    pub fn fail(&mut self, message: impl Display) {
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(message.to_string());
        }
    }

    /// Records one case, failing with `message` unless `ok`.
    pub fn check(&mut self, ok: bool, message: impl FnOnce() -> String) {
        self.case();
        if !ok {
            self.fail(message());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }

    pub fn failure_count(&self) -> u64 {
        self.failure_count
    }

    /// Merges the counts and failures of `other` into `self`.
    pub fn absorb(&mut self, other: Report) {
        self.cases_checked += other.cases_checked;
        for f in other.failures {
            if self.failures.len() < MAX_STORED_FAILURES {
                self.failures.push(f);
            }
        }
        self.failure_count += other.failure_count;
    }

    /// Canonical JSON with a trailing note when failures were truncated.
    pub fn to_json(&self) -> String {
        let mut shown = self.clone();
        let hidden = self.failure_count - self.failures.len() as u64;
        if hidden > 0 {
            shown.failures.push(format!("... and {hidden} more"));
        }
        serde_json::to_string_pretty(&shown).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failures_are_capped_but_counted() {
        let mut r = Report::new("demo").with_bound("n", 3);
        for i in 0..250 {
            r.check(i % 2 == 0, || format!("case {i}"));
        }
        assert_eq!(r.cases_checked, 250);
        assert_eq!(r.failure_count(), 125);
        assert!(!r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["bound"]["n"], 3);
        let failures = v["failures"].as_array().unwrap();
        assert_eq!(failures.len(), 101);
        assert_eq!(failures[100], "... and 25 more");
    }
}
