//! Structured pass/fail records.

use std::fmt;
use std::sync::Mutex;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// Optional data was unavailable.
    Skip,
    /// A printed formula disagrees with the computation; informational only.
    InfoDiff,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::InfoDiff => "info-diff",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, anchor: impl Into<String>, status: Status, witness: Value) -> Self {
        Check { id: id.into(), anchor: anchor.into(), status, witness }
    }

    pub fn from_bool(id: impl Into<String>, anchor: impl Into<String>, ok: bool, witness: Value) -> Self {
        Self::new(id, anchor, if ok { Status::Pass } else { Status::Fail }, witness)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
    #[serde(rename = "info-diff")]
    pub info_diff: usize,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new(), elapsed: Duration::ZERO }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
        self.elapsed += other.elapsed;
    }

    /// Prefixes every check id.
    pub fn relabel(mut self, prefix: &str) -> Self {
        for c in &mut self.checks {
            c.id = format!("{prefix}{}", c.id);
        }
        self
    }

    /// Orders checks by id so output does not depend on scheduling.
    pub fn sort(&mut self) {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
    }

    pub fn summary(&self) -> Summary {
        let mut s = Summary::default();
        for c in &self.checks {
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skip => s.skip += 1,
                Status::InfoDiff => s.info_diff += 1,
            }
        }
        s
    }

    pub fn passed(&self) -> bool {
        self.summary().fail == 0
    }

    pub fn get(&self, id: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// 0 when nothing failed, 1 otherwise. Skips and info-diffs never count.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite,
            "checks": self.checks,
            "summary": self.summary(),
            "elapsed_ms": self.elapsed.as_millis() as u64,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{:<9} {}  [{}]\n", c.status.to_string(), c.id, c.anchor));
            if c.status == Status::Fail || c.status == Status::InfoDiff {
                out.push_str(&format!("          {}\n", c.witness));
            }
        }
        let s = self.summary();
        out.push_str(&format!(
            "{}: {} pass, {} fail, {} skip, {} info-diff ({} ms)\n",
            self.suite,
            s.pass,
            s.fail,
            s.skip,
            s.info_diff,
            self.elapsed.as_millis()
        ));
        out
    }
}

/// Append-only collector for checks produced on several threads.
#[derive(Default)]
pub struct Collector(Mutex<Vec<Check>>);

impl Collector {
    pub fn push(&self, check: Check) {
        self.0.lock().expect("collector poisoned").push(check);
    }

    pub fn into_report(self, suite: impl Into<String>, elapsed: Duration) -> Report {
        let mut r = Report { suite: suite.into(), checks: self.0.into_inner().expect("collector poisoned"), elapsed };
        r.sort();
        r
    }
}
