//! The machine-readable record of one command, written by `--report-out`.
//!
//! Version 1 is a JSON object with these keys, in this order:
//!
//! - `format`: always `"invtwist-run-report"`
//! - `version`: `1`
//! - `command`: the arguments after the program name
//! - `inputs`: `{reference, sha256}` for every file or builtin read, sorted;
//!   builtins are digested through their canonical definition text and
//!   carry the field as `builtin:H4@Q`
//! - `stages`: `{name, kind, passed, report}` in execution order, where
//!   `kind` is `hypothesis` (a property of the input) or `consequence`
//!   (something implied by earlier stages) and `report` lists the checked
//!   identities and the first failing basis tuple of each failed one
//! - `output`: `{path, sha256}` of a written definition file, or `null`
//! - `verdict`: `pass`, `fail` or `error`
//! - `exit_code`: `0`, `1` or `2`
//! - `error`: the message behind an `error` verdict, or `null`
//! - `wall_time_ms`: the only field that varies between identical runs

use serde::Serialize;

use invtwist::suite::{StageKind, StageResult};
use invtwist::Report;

use crate::defs::InputDigest;
use crate::error::{EXIT_FAIL, EXIT_PASS};

pub const REPORT_FORMAT: &str = "invtwist-run-report";
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub format: &'static str,
    pub version: u32,
    pub command: Vec<String>,
    pub inputs: Vec<InputDigest>,
    pub stages: Vec<StageResult>,
    pub output: Option<OutputDigest>,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub error: Option<String>,
    pub wall_time_ms: u64,
}

impl RunReport {
    pub fn new(command: Vec<String>) -> Self {
        RunReport {
            format: REPORT_FORMAT,
            version: REPORT_VERSION,
            command,
            inputs: Vec::new(),
            stages: Vec::new(),
            output: None,
            verdict: Verdict::Pass,
            exit_code: EXIT_PASS,
            error: None,
            wall_time_ms: 0,
        }
    }

    pub fn stage(&mut self, name: &str, kind: StageKind, mut report: Report) -> bool {
        if report.subject.is_empty() {
            report.subject = name.to_string();
        }
        let passed = report.passed();
        self.stages.push(StageResult { name: name.to_string(), kind, passed, report });
        passed
    }

    /// Sets the verdict from the stages unless an error was recorded.
    pub fn finish(&mut self) {
        if self.error.is_some() {
            return;
        }
        if self.stages.iter().all(|s| s.passed) {
            self.verdict = Verdict::Pass;
            self.exit_code = EXIT_PASS;
        } else {
            self.verdict = Verdict::Fail;
            self.exit_code = EXIT_FAIL;
        }
    }

    pub fn error(&mut self, exit_code: i32, message: String) {
        self.verdict = if exit_code == EXIT_FAIL { Verdict::Fail } else { Verdict::Error };
        self.exit_code = exit_code;
        self.error = Some(message);
    }

    pub fn failed_stage(&self) -> Option<&StageResult> {
        self.stages.iter().find(|s| !s.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
