//! Pass / fail / not-applicable bookkeeping shared by every verification suite.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
    Inconclusive,
}

impl Status {
    pub fn label(&self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::NotApplicable => "N/A",
            Status::Inconclusive => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub statement: String,
    pub residual: Option<f64>,
    pub tolerance: f64,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    /// Passes iff `residual ≤ tolerance` (NaN fails).
    pub fn residual(id: &str, statement: &str, residual: f64, tolerance: f64) -> Check {
        let status = if residual <= tolerance {
            Status::Pass
        } else {
            Status::Fail
        };
        Check {
            id: id.into(),
            statement: statement.into(),
            residual: Some(residual),
            tolerance,
            status,
            note: None,
        }
    }

    pub fn not_applicable(id: &str, statement: &str, reason: &str) -> Check {
        Check {
            id: id.into(),
            statement: statement.into(),
            residual: None,
            tolerance: 0.0,
            status: Status::NotApplicable,
            note: Some(reason.into()),
        }
    }

    pub fn boolean(id: &str, statement: &str, ok: bool, note: Option<String>) -> Check {
        Check {
            id: id.into(),
            statement: statement.into(),
            residual: None,
            tolerance: 0.0,
            status: if ok { Status::Pass } else { Status::Fail },
            note,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Check {
        self.note = Some(note.into());
        self
    }

    /// Keeps the residual but reports the check as not applicable.
    pub fn demote(mut self, reason: &str) -> Check {
        self.status = Status::NotApplicable;
        self.note = Some(reason.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Premise {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub premises: Vec<Premise>,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport {
            suite: suite.into(),
            premises: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn premise(&mut self, name: &str, holds: bool, residual: Option<f64>) {
        self.premises.push(Premise {
            name: name.into(),
            holds,
            residual,
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn all_pass(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn check(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Worst status: fail, then inconclusive, then pass.
    pub fn status(&self) -> Status {
        if self.checks.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else if self.checks.iter().any(|c| c.status == Status::Inconclusive) {
            Status::Inconclusive
        } else if self
            .checks
            .iter()
            .all(|c| c.status == Status::NotApplicable)
        {
            Status::NotApplicable
        } else {
            Status::Pass
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nan_residual_fails() {
        assert_eq!(
            Check::residual("x", "x", f64::NAN, 1.0).status,
            Status::Fail
        );
        assert_eq!(Check::residual("x", "x", 0.5, 1.0).status, Status::Pass);
    }

    #[test]
    fn suite_status_is_worst_case() {
        let mut s = SuiteReport::new("s");
        s.push(Check::not_applicable("a", "a", "no"));
        assert_eq!(s.status(), Status::NotApplicable);
        s.push(Check::residual("b", "b", 0.0, 1.0));
        assert_eq!(s.status(), Status::Pass);
        s.push(Check::residual("c", "c", 2.0, 1.0));
        assert_eq!(s.status(), Status::Fail);
        assert_eq!(s.failures().count(), 1);
    }
}
