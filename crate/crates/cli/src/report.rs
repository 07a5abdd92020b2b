//! JSON report schema.
//!
//! The schema is fixed so reports are machine-diffable CI artifacts:
//! `{"suite", "engine_version", "checks": [{"name", "status", "residual",
//! "elapsed_ms"}], "summary": {"total", "passed", "failed"}}`. Summary
//! counts are derived from the check list on construction, field order is
//! the struct order, and serialization is pretty-printed with a trailing
//! newline, so parse-then-reserialize is byte-identical.

use mhs5_core::verifier::CheckResult;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub engine_version: String,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: &str, checks: Vec<CheckResult>) -> Report {
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Report {
            suite: suite.to_string(),
            engine_version: mhs5_core::ENGINE_VERSION.to_string(),
            checks,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn from_json(s: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mhs5_core::verifier::CheckStatus;

    fn check(name: &str, status: CheckStatus) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            status,
            residual: "0".to_string(),
            elapsed_ms: 3,
        }
    }

    #[test]
    fn summary_counts_match_checks() {
        let r = Report::new(
            "demo",
            vec![
                check("a", CheckStatus::Pass),
                check("b", CheckStatus::Fail),
                check("c", CheckStatus::Pass),
            ],
        );
        assert_eq!(r.summary.total, 3);
        assert_eq!(r.summary.passed, 2);
        assert_eq!(r.summary.failed, 1);
        assert!(!r.all_passed());
        assert_eq!(r.engine_version, mhs5_core::ENGINE_VERSION);
    }

    #[test]
    fn json_round_trips_byte_identical() {
        let r = Report::new("demo", vec![check("a", CheckStatus::Pass)]);
        let json = r.to_json();
        let parsed = Report::from_json(&json).unwrap();
        assert_eq!(parsed, r);
        assert_eq!(parsed.to_json(), json);
    }

    #[test]
    fn status_serializes_lowercase() {
        let r = Report::new("demo", vec![check("a", CheckStatus::Pass)]);
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["status"], serde_json::json!("pass"));
        assert_eq!(v["summary"]["failed"], serde_json::json!(0));
    }
}
