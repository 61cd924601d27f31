use std::fmt::Write as _;

use recalc_core::suite::{CheckOutcome, Status};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub qmode: String,
    pub seed: Option<u64>,
    #[serde(flatten)]
    pub outcome: CheckOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
    pub error: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub rmatrix: String,
    pub checks: Vec<Entry>,
    pub summary: Summary,
}

impl Report {
    pub fn new(rmatrix: String, checks: Vec<Entry>) -> Self {
        let count = |s: Status| checks.iter().filter(|e| e.outcome.status == s).count();
        let summary = Summary {
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skipped: count(Status::Skipped),
            error: count(Status::Error),
        };
        Report { rmatrix, checks, summary }
    }

    /// Failures and errors count against the run; skipped checks do not.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    #[cfg(test)]
    pub fn from_json(src: &str) -> serde_json::Result<Self> {
        serde_json::from_str(src)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "R = {}", self.rmatrix);
        for e in &self.checks {
            let o = &e.outcome;
            let status = match o.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
                Status::Error => "ERROR",
            };
            let params = if o.params.is_empty() { String::new() } else { format!(" [{}]", o.params) };
            let _ = write!(out, "{status:5} {}/{}{params} ({}) {} ms", o.suite, o.name, e.qmode, o.millis);
            if let Some(w) = &o.witness {
                let _ = write!(out, "\n      witness: {w}");
            }
            if let Some(d) = &o.detail {
                let _ = write!(out, "\n      {d}");
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(out, "{} passed, {} failed, {} skipped, {} errors", s.pass, s.fail, s.skipped, s.error);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(status: Status) -> Entry {
        Entry {
            qmode: "exact".into(),
            seed: Some(3),
            outcome: CheckOutcome {
                suite: "symmetry".into(),
                name: "braid".into(),
                params: "N=2".into(),
                status,
                witness: (status == Status::Fail).then(|| "residual entry (11, 11) = q".into()),
                detail: None,
                millis: 4,
            },
        }
    }

    #[test]
    fn json_round_trip_is_a_fixpoint() {
        let r = Report::new("standard:2".into(), vec![entry(Status::Pass), entry(Status::Fail), entry(Status::Skipped)]);
        let once = r.to_json();
        let back = Report::from_json(&once).unwrap();
        assert_eq!(back, r);
        assert_eq!(back.to_json(), once);
    }

    #[test]
    fn skipped_checks_do_not_fail_the_run() {
        assert!(Report::new("x".into(), vec![entry(Status::Pass), entry(Status::Skipped)]).passed());
        assert!(!Report::new("x".into(), vec![entry(Status::Error)]).passed());
    }
}
