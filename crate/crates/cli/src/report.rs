use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Assertion {
    pub suite: String,
    pub id: String,
    pub status: Status,
    /// The claim being checked, in words.
    pub anchor: String,
    pub witness: Value,
    /// Wall-clock time; kept out of the JSON so reports stay reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

/// What the finite checks do and do not establish.
pub const SCOPE_NOTE: &str = "The group-theoretic statements (G equals the automorphism group \
preserving A; the stabilizer of the domain is trivial within the full automorphism group) are not \
checked directly. Only the finite lattice, polyhedral and polynomial computations their proofs \
reduce to are verified here.";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suites: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub symbolic: bool,
    pub sweep: String,
    pub keum_digest: Option<String>,
    pub scope: &'static str,
    pub summary: Summary,
    pub assertions: Vec<Assertion>,
}

impl Report {
    pub fn summarize(&mut self) {
        let mut s = Summary::default();
        for a in &self.assertions {
            match a.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        self.summary = s;
    }

    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.status != Status::Fail)
    }

    pub fn get(&self, id: &str) -> Option<&Assertion> {
        self.assertions.iter().find(|a| a.id == id)
    }

    pub fn suite(&self, suite: &str) -> impl Iterator<Item = &Assertion> {
        let suite = suite.to_string();
        self.assertions.iter().filter(move |a| a.suite == suite)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
