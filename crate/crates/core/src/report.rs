//! Structured pass/fail reports shared by the library checks and the CLI.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

/// One named check with an optional counterexample witness.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub duration_ms: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A suite of checks; passes only if every check passes.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub status: Status,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Report {
        Report { suite: suite.into(), status: Status::Pass, checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool, witness: Option<String>) {
        self.push_timed(name, passed, witness, 0);
    }

    pub fn push_timed(
        &mut self,
        name: impl Into<String>,
        passed: bool,
        witness: Option<String>,
        duration_ms: u128,
    ) {
        let status = if passed { Status::Pass } else { Status::Fail };
        if !passed {
            self.status = Status::Fail;
        }
        self.checks.push(Check { name: name.into(), status, witness, duration_ms });
    }

    /// Runs a closure as a timed check returning (passed, witness).
    pub fn run(&mut self, name: impl Into<String>, f: impl FnOnce() -> (bool, Option<String>)) {
        let start = Instant::now();
        let (passed, witness) = f();
        self.push_timed(name, passed, witness, start.elapsed().as_millis());
    }

    pub fn absorb(&mut self, other: Report) {
        if !other.passed() {
            self.status = Status::Fail;
        }
        self.checks.extend(other.checks);
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.suite, if self.passed() { "PASS" } else { "FAIL" })?;
        for c in &self.checks {
            write!(
                f,
                "  [{}] {}",
                if c.status == Status::Pass { "ok" } else { "FAIL" },
                c.name
            )?;
            if let Some(w) = &c.witness {
                write!(f, " ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
