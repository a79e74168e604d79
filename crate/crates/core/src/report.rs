//! Verification reports: one row per checkpoint plus a summary, rendered as
//! aligned text or as JSON with exact values kept as strings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub group: String,
    pub inputs: Value,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub anchor: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub version: String,
}

impl Report {
    /// Sorts checks by `(group, id)` so that the output does not depend on
    /// evaluation order.
    pub fn new(mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| (&a.group, &a.id).cmp(&(&b.group, &b.id)));
        let failing: Vec<String> = checks.iter().filter(|c| !c.pass).map(|c| c.id.clone()).collect();
        let summary =
            Summary { total: checks.len(), passed: checks.len() - failing.len(), failed: failing.len(), failing };
        Self { checks, summary, version: VERSION.to_string() }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(0);
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = write!(out, "{status}  {:<width$}  expected {}", c.id, c.expected);
            if !c.pass {
                let _ = write!(out, "  actual {}", c.actual);
            }
            out.push('\n');
        }
        let _ = writeln!(
            out,
            "{} checks, {} passed, {} failed",
            self.summary.total, self.summary.passed, self.summary.failed
        );
        if !self.summary.failing.is_empty() {
            let _ = writeln!(out, "failing: {}", self.summary.failing.join(", "));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(id: &str, group: &str, pass: bool) -> Check {
        Check {
            id: id.into(),
            group: group.into(),
            inputs: Value::Null,
            expected: "1/3".into(),
            actual: if pass { "1/3" } else { "1/4" }.into(),
            pass,
            anchor: String::new(),
        }
    }

    #[test]
    fn summary_and_order() {
        let r = Report::new(vec![check("b.1", "b", true), check("a.2", "a", false), check("a.1", "a", true)]);
        let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, ["a.1", "a.2", "b.1"]);
        assert_eq!((r.summary.total, r.summary.passed, r.summary.failed), (3, 2, 1));
        assert_eq!(r.summary.failing, ["a.2"]);
        assert!(!r.all_passed());
        assert!(r.to_text().contains("FAIL  a.2  expected 1/3  actual 1/4"));
    }

    #[test]
    fn json_shape() {
        let r = Report::new(vec![check("x", "g", true)]);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["checks", "summary", "version"]);
        assert_eq!(v["checks"][0]["expected"], "1/3");
    }
}
