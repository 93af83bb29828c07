//! End-to-end pipelines for three families of examples of invariance under
//! twisting: deforming a comodule algebra by an operator-valued map,
//! external homogenization, and doubles of Hopf algebras with a
//! semiquasitriangular element.
//!
//! A pipeline is a sequence of stages. Hypothesis stages check the input;
//! consequence stages check something the theory guarantees once every
//! earlier stage passed. A failing consequence stage is therefore a
//! violation (a bug in some translation, or a false theorem) rather than a
//! property of the input, and [`PipelineRun::violations`] lists them.

mod comodule_twist;
mod homogenization;
mod sqt_double;

pub use comodule_twist::{
    check_nu_conditions, check_nu_inverse_relations, comodule_twist_pipeline, NuTwist, NU_ALPHA, NU_BETA,
    NU_COUNIT, NU_GAMMA, NU_DELTA, NU_UNIT,
};
pub use homogenization::{homogenization_pipeline, HomogenizationInstance};
pub use sqt_double::{
    check_auxiliary_relation, check_quasitriangular, check_sqt, sqt_double_pipeline, SqtMaps, AUXILIARY, QT_DELTA_LEFT,
    QT_DELTA_RIGHT, QT_INTERTWINE, SQT1, SQT2, SQT3,
};

use serde::Serialize;

use crate::algebra::Algebra;
use crate::error::Error;
use crate::invariance::IsoCertificate;
use crate::report::Report;
use crate::twisting::CertifiedTwisting;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageKind {
    Hypothesis,
    Consequence,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageResult {
    pub name: String,
    pub kind: StageKind,
    pub passed: bool,
    pub report: Report,
}

/// The staged outcome of one pipeline on one instance.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineRun {
    pub pipeline: String,
    pub instance: String,
    pub stages: Vec<StageResult>,
    /// True when the run stopped at a failing stage.
    pub aborted: bool,
    #[serde(skip)]
    pub certificate: Option<IsoCertificate>,
    #[serde(skip)]
    pub rprime: Option<CertifiedTwisting>,
    /// The deformed algebra on the first factor (`A_ν`, `A[H]`, or the star
    /// product on `H*`).
    #[serde(skip)]
    pub deformed: Option<Algebra>,
}

impl PipelineRun {
    pub fn new(pipeline: &str, instance: impl Into<String>) -> Self {
        PipelineRun {
            pipeline: pipeline.to_string(),
            instance: instance.into(),
            stages: Vec::new(),
            aborted: false,
            certificate: None,
            rprime: None,
            deformed: None,
        }
    }

    /// Every stage ran and passed.
    pub fn passed(&self) -> bool {
        !self.aborted && self.stages.iter().all(|s| s.passed)
    }

    pub fn stage(&self, name: &str) -> Option<&StageResult> {
        self.stages.iter().find(|s| s.name == name)
    }

    /// Consequence stages that failed although every earlier stage passed.
    pub fn violations(&self) -> Vec<&StageResult> {
        self.stages.iter().filter(|s| s.kind == StageKind::Consequence && !s.passed).collect()
    }

    pub fn failed_stage(&self) -> Option<&StageResult> {
        self.stages.iter().find(|s| !s.passed)
    }

    /// Records a stage; returns whether the pipeline may continue.
    pub(crate) fn record(&mut self, name: &str, kind: StageKind, mut report: Report) -> bool {
        if report.subject.is_empty() {
            report.subject = name.to_string();
        }
        let passed = report.passed();
        self.stages.push(StageResult { name: name.to_string(), kind, passed, report });
        if !passed {
            self.aborted = true;
        }
        passed
    }

    /// Records the outcome of a builder: its report on refusal or internal
    /// failure, a passing stage otherwise.
    pub(crate) fn record_result<T>(&mut self, name: &str, kind: StageKind, result: crate::Result<T>) -> Option<T> {
        match result {
            Ok(value) => {
                let mut rep = Report::new(name);
                rep.pass(name);
                self.record(name, kind, rep);
                Some(value)
            }
            Err(Error::HypothesesFailed(report)) | Err(Error::Internal { report, .. }) => {
                self.record(name, kind, *report);
                None
            }
            Err(other) => {
                let mut rep = Report::new(name);
                rep.fail(name, other.to_string());
                self.record(name, kind, rep);
                None
            }
        }
    }

    /// One line per stage.
    pub fn summary(&self) -> String {
        let mut out = format!("pipeline {} on {}\n", self.pipeline, self.instance);
        for s in &self.stages {
            let verdict = if s.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("  [{verdict}] {}\n", s.name));
            if !s.passed {
                for line in s.report.to_string().lines().skip(1) {
                    out.push_str(&format!("    {line}\n"));
                }
            }
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        out.push_str(&format!("  result: {verdict}\n"));
        out
    }
}

/// `lhs == rhs` as a single-identity report.
pub(crate) fn equality(name: &str, lhs: &crate::LinMap, rhs: &crate::LinMap) -> Report {
    let mut rep = Report::new(name);
    rep.check_maps(name, lhs, rhs);
    rep
}
