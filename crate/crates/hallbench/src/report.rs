//! Verification reports: one case per checked coefficient or bidegree.

use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub key: String,
    pub status: Status,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub suite: String,
    pub relation: String,
    pub cases: Vec<Case>,
}

impl Report {
    pub fn new(suite: &str, relation: &str) -> Report {
        Report { suite: suite.into(), relation: relation.into(), cases: Vec::new() }
    }

    pub fn check(&mut self, key: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display, ok: bool) {
        let status = if ok { Status::Pass } else { Status::Fail };
        self.cases.push(Case { key: key.into(), status, lhs: lhs.to_string(), rhs: rhs.to_string() });
    }

    /// Records equality of two displayable values compared with `==`.
    pub fn expect_eq<T: PartialEq + fmt::Display>(&mut self, key: impl Into<String>, lhs: &T, rhs: &T) {
        self.check(key, lhs, rhs, lhs == rhs);
    }

    pub fn skip(&mut self, key: impl Into<String>, why: &str) {
        self.cases.push(Case { key: key.into(), status: Status::Skipped, lhs: why.into(), rhs: String::new() });
    }

    pub fn merge(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }

    pub fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    /// At least one case passed and none failed.
    pub fn passed(&self) -> bool {
        self.count(Status::Fail) == 0 && self.count(Status::Pass) > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn summary(&self) -> String {
        let first = self.failures().next().map(|c| format!("; first failure {}: {} vs {}", c.key, c.lhs, c.rhs));
        format!(
            "{}/{}: {} pass, {} fail, {} skipped{}",
            self.suite,
            self.relation,
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped),
            first.unwrap_or_default()
        )
    }
}
