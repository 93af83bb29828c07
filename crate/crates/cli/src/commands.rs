//! The work behind each subcommand. Every command records its checks as
//! stages of a [`RunReport`]; the exit code is derived from those stages.

use invtwist::constructions::{
    drinfeld_double, h4_quasitriangular_terms, kc2_triangular_terms, smash_product, SqtElement,
};
use invtwist::invariance::{
    build_isomorphism, build_star_algebra, check_invariance_hypotheses, check_star_hypotheses, derive_twisted_map,
};
use invtwist::suite::{
    check_auxiliary_relation, check_nu_conditions, check_nu_inverse_relations, check_sqt, comodule_twist_pipeline,
    homogenization_pipeline, sqt_double_pipeline, HomogenizationInstance, NuTwist, PipelineRun, StageKind,
};
use invtwist::twisting::{build_twisted_product, TwistingData};
use invtwist::{ComoduleAlgebra, Error, Field, Report};

use crate::builtins;
use crate::defs::{Definition, Kind, Loader};
use crate::emit;
use crate::error::{CliError, CliResult};
use crate::run_report::RunReport;

use StageKind::{Consequence, Hypothesis};

pub const DEFAULT_MAX_DIM: usize = 64;

#[derive(Clone, Debug)]
pub struct Settings {
    pub field: Option<Field>,
    pub max_dim: usize,
}

impl Settings {
    pub fn field(&self) -> Field {
        self.field.unwrap_or(Field::Rationals)
    }

    fn guard(&self, what: &str, dim: usize) -> CliResult<()> {
        if dim > self.max_dim {
            return Err(CliError::TooLarge { what: what.to_string(), dim, limit: self.max_dim });
        }
        Ok(())
    }
}

/// The largest tensor product the checks of `def` work in.
pub fn product_dim(def: &Definition) -> usize {
    match def {
        Definition::Algebra(a) => a.dim(),
        Definition::Hopf(h) => h.dim() * h.dim(),
        Definition::ComoduleAlgebra(ca) | Definition::NuTwist(ca, _) => ca.algebra().dim() * ca.hopf().dim(),
        Definition::LinMap(m) => m.dom_dim().max(m.cod_dim()),
        Definition::TwistingData(t) => t.a().dim() * t.b().dim(),
        Definition::InvarianceData(s) => (s.twisting.a().dim().max(s.aprime.dim())) * s.twisting.b().dim(),
        Definition::StarData(s) => s.twisting.a().dim() * s.twisting.b().dim(),
        Definition::SqtElement(e) => e.hopf().dim() * e.hopf().dim(),
    }
}

/// Records the outcome of a fallible construction as a stage. Refusals and
/// missing inverses are verdicts; malformed input is an error.
fn outcome<T>(rep: &mut RunReport, name: &str, kind: StageKind, result: invtwist::Result<T>) -> CliResult<Option<T>> {
    match result {
        Ok(v) => {
            let mut r = Report::new(name);
            r.pass(name);
            rep.stage(name, kind, r);
            Ok(Some(v))
        }
        Err(Error::HypothesesFailed(report)) | Err(Error::Internal { report, .. }) => {
            rep.stage(name, kind, *report);
            Ok(None)
        }
        Err(e @ (Error::NotConvolutionInvertible(_) | Error::NotInvertible { .. } | Error::Inconsistent)) => {
            let mut r = Report::new(name);
            r.fail(name, e.to_string());
            rep.stage(name, kind, r);
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn subject(mut r: Report, name: &str) -> Report {
    r.subject = name.to_string();
    r
}

pub fn check(kind: Kind, inputs: &[String], settings: &Settings, loader: &mut Loader, rep: &mut RunReport) -> CliResult<()> {
    let prefixed = inputs.len() > 1;
    for input in inputs {
        let def = loader.load_as(input, kind)?;
        settings.guard(input, product_dim(&def))?;
        let mut sub = RunReport::new(Vec::new());
        check_definition(def, &mut sub)?;
        for mut s in sub.stages {
            if prefixed {
                s.name = format!("{input}: {}", s.name);
            }
            rep.stages.push(s);
        }
    }
    Ok(())
}

fn check_twisting(t: &TwistingData, rep: &mut RunReport) -> bool {
    let a = rep.stage("algebra A", Hypothesis, subject(t.a().certify(), "algebra A"));
    let b = rep.stage("algebra B", Hypothesis, subject(t.b().certify(), "algebra B"));
    let r = rep.stage("twisting axioms", Hypothesis, t.check_axioms());
    a && b && r
}

fn check_comodule(ca: &ComoduleAlgebra, rep: &mut RunReport) -> bool {
    let h = rep.stage("Hopf algebra", Hypothesis, ca.hopf().certify());
    let a = rep.stage("algebra", Hypothesis, ca.algebra().certify());
    let c = rep.stage("comodule algebra", Hypothesis, ca.check());
    h && a && c
}

fn check_definition(def: Definition, rep: &mut RunReport) -> CliResult<()> {
    match def {
        Definition::Algebra(a) => {
            rep.stage("algebra", Hypothesis, a.certify());
        }
        Definition::Hopf(h) => {
            rep.stage("Hopf algebra", Hypothesis, h.certify());
        }
        Definition::ComoduleAlgebra(ca) => {
            check_comodule(&ca, rep);
        }
        Definition::LinMap(m) => {
            let mut r = Report::new("linear map");
            r.pass(&format!("{}x{} map with {} nonzero entries", m.cod_dim(), m.dom_dim(), m.nnz()));
            rep.stage("linear map", Hypothesis, r);
        }
        Definition::TwistingData(t) => {
            if check_twisting(&t, rep) {
                let cert = t.certify()?;
                if let Some(p) = outcome(rep, "twisted product", Consequence, build_twisted_product(&cert))? {
                    rep.stage("twisted product is an algebra", Consequence, p.product().certify());
                }
            }
        }
        Definition::InvarianceData(spec) => {
            if check_twisting(&spec.twisting, rep) {
                let d = spec.certify()?;
                if rep.stage("invariance hypotheses", Hypothesis, check_invariance_hypotheses(&d)) {
                    if let Some(rp) = outcome(rep, "derived twisting map", Consequence, derive_twisted_map(&d))? {
                        if let Some(cert) = outcome(rep, "isomorphism", Consequence, build_isomorphism(&d, &rp))? {
                            rep.stage("isomorphism certificate", Consequence, cert.report);
                        }
                    }
                }
            }
        }
        Definition::StarData(spec) => {
            if check_twisting(&spec.twisting, rep) {
                let s = spec.certify()?;
                if rep.stage("star-product hypotheses", Hypothesis, check_star_hypotheses(&s)) {
                    outcome(rep, "star algebra", Consequence, build_star_algebra(&s))?;
                }
            }
        }
        Definition::NuTwist(ca, nu) => {
            if check_comodule(&ca, rep) {
                if let Some(n) = outcome(rep, "ν is convolution invertible", Hypothesis, NuTwist::new(ca, nu))? {
                    if rep.stage("conditions on ν", Hypothesis, check_nu_conditions(&n)) {
                        rep.stage("relations for ν⁻¹", Consequence, check_nu_inverse_relations(&n));
                    }
                }
            }
        }
        Definition::SqtElement(e) => {
            if rep.stage("Hopf algebra", Hypothesis, e.hopf().certify())
                && rep.stage("semiquasitriangular conditions", Hypothesis, check_sqt(&e))
            {
                rep.stage("auxiliary relation", Consequence, check_auxiliary_relation(&e));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuildTarget {
    TwistedProduct,
    Smash,
    Double,
    StarAlgebra,
    DeriveRprime,
    Homogenization,
}

impl BuildTarget {
    pub const ALL: [BuildTarget; 6] = [
        BuildTarget::TwistedProduct,
        BuildTarget::Smash,
        BuildTarget::Double,
        BuildTarget::StarAlgebra,
        BuildTarget::DeriveRprime,
        BuildTarget::Homogenization,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuildTarget::TwistedProduct => "twisted-product",
            BuildTarget::Smash => "smash",
            BuildTarget::Double => "double",
            BuildTarget::StarAlgebra => "star-algebra",
            BuildTarget::DeriveRprime => "derive-rprime",
            BuildTarget::Homogenization => "homogenization",
        }
    }

    pub fn parse(s: &str) -> Option<BuildTarget> {
        BuildTarget::ALL.into_iter().find(|t| t.name() == s)
    }

    /// The kind of definition the target is built from.
    pub fn input_kind(self) -> Kind {
        match self {
            BuildTarget::TwistedProduct => Kind::TwistingData,
            BuildTarget::Smash | BuildTarget::Homogenization => Kind::ComoduleAlgebra,
            BuildTarget::Double => Kind::Hopf,
            BuildTarget::StarAlgebra => Kind::StarData,
            BuildTarget::DeriveRprime => Kind::InvarianceData,
        }
    }
}

/// Builds `target` from `input`; returns the canonical text of the result,
/// or `None` when a certification stage failed.
pub fn build(
    target: BuildTarget,
    input: &str,
    settings: &Settings,
    loader: &mut Loader,
    rep: &mut RunReport,
) -> CliResult<Option<String>> {
    let def = loader.load_as(input, target.input_kind())?;
    let dim = match (&def, target) {
        (Definition::Hopf(h), BuildTarget::Double) => h.dim() * h.dim(),
        (d, _) => product_dim(d),
    };
    settings.guard(input, dim)?;
    let algebra = match def {
        Definition::TwistingData(t) => {
            if !check_twisting(&t, rep) {
                return Ok(None);
            }
            let cert = t.certify()?;
            outcome(rep, "twisted product", Consequence, build_twisted_product(&cert))?.map(|p| p.into_product())
        }
        Definition::ComoduleAlgebra(ca) => {
            if !check_comodule(&ca, rep) {
                return Ok(None);
            }
            if target == BuildTarget::Smash {
                outcome(rep, "smash product", Consequence, smash_product(&ca))?.map(|p| p.into_product())
            } else {
                let inst = HomogenizationInstance::new(ca);
                outcome(rep, "homogenization", Consequence, inst.homogenization())?
            }
        }
        Definition::Hopf(h) => {
            if !rep.stage("Hopf algebra", Hypothesis, h.certify()) {
                return Ok(None);
            }
            outcome(rep, "Drinfeld double", Consequence, drinfeld_double(&h))?
        }
        Definition::StarData(spec) => {
            if !check_twisting(&spec.twisting, rep) {
                return Ok(None);
            }
            let s = spec.certify()?;
            outcome(rep, "star algebra", Consequence, build_star_algebra(&s))?
        }
        Definition::InvarianceData(spec) => {
            if !check_twisting(&spec.twisting, rep) {
                return Ok(None);
            }
            let d = spec.certify()?;
            if !rep.stage("invariance hypotheses", Hypothesis, check_invariance_hypotheses(&d)) {
                return Ok(None);
            }
            let Some(rp) = outcome(rep, "derived twisting map", Consequence, derive_twisted_map(&d))? else {
                return Ok(None);
            };
            return Ok(Some(emit::linmap(rp.r())));
        }
        _ => unreachable!("load_as returned the requested kind"),
    };
    let Some(algebra) = algebra else { return Ok(None) };
    if !rep.stage("built algebra", Consequence, subject(algebra.certify(), "built algebra")) {
        return Ok(None);
    }
    Ok(Some(emit::algebra(&algebra, None)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PipelineName {
    ComoduleTwist,
    Homogenization,
    SqtDouble,
}

impl PipelineName {
    pub const ALL: [PipelineName; 3] = [PipelineName::ComoduleTwist, PipelineName::Homogenization, PipelineName::SqtDouble];

    pub fn name(self) -> &'static str {
        match self {
            PipelineName::ComoduleTwist => "comodule-twist",
            PipelineName::Homogenization => "homogenization",
            PipelineName::SqtDouble => "sqt-double",
        }
    }

    pub fn parse(s: &str) -> Option<PipelineName> {
        PipelineName::ALL.into_iter().find(|p| p.name() == s)
    }
}

/// How a pipeline instance is chosen on the command line.
#[derive(Clone, Debug, Default)]
pub struct InstanceArgs {
    pub builtin: Option<String>,
    pub input: Option<String>,
    /// Deformation parameter for `comodule-twist` on `kC2`.
    pub c: Option<String>,
    /// `trivial` or `triangular` for `sqt-double`.
    pub r: Option<String>,
    /// Parameter of the quasitriangular family on `H4`.
    pub alpha: Option<String>,
}

fn builtin_hopf(name: &str, settings: &Settings, loader: &mut Loader) -> CliResult<invtwist::HopfAlgebra> {
    let reference = format!("builtin:{name}");
    match loader.load_as(&reference, Kind::Hopf)? {
        Definition::Hopf(h) => {
            settings.guard(&reference, h.dim() * h.dim())?;
            Ok(h)
        }
        _ => unreachable!(),
    }
}

fn sqt_element(name: &str, args: &InstanceArgs, settings: &Settings, loader: &mut Loader) -> CliResult<(SqtElement, String)> {
    let h = builtin_hopf(name, settings, loader)?;
    let field = h.field();
    let choice = args.r.as_deref().unwrap_or("trivial");
    let terms = match (choice, name, &args.alpha) {
        ("trivial", _, None) => return Ok((SqtElement::trivial(h), format!("{name}, r = 1 ⊗ 1, over {field}"))),
        ("triangular", "kC2", None) => kc2_triangular_terms(field)?,
        ("triangular", "H4", alpha) => {
            let a = match alpha {
                Some(s) => field.parse(s).map_err(|e| CliError::Usage(e.to_string()))?,
                None => field.zero(),
            };
            let label = format!("{name}, r = R_{a}, over {field}");
            return Ok((SqtElement::from_terms(h, h4_quasitriangular_terms(field, &a)?)?, label));
        }
        (_, _, Some(_)) => return Err(CliError::Usage("--alpha applies only to --r triangular on H4".into())),
        (other, _, None) => {
            return Err(CliError::Usage(format!("no {other} element is known for {name}; use trivial or an sqt-element file")))
        }
    };
    Ok((SqtElement::from_terms(h, terms)?, format!("{name}, r = {choice}, over {field}")))
}

pub fn pipeline(
    name: PipelineName,
    args: &InstanceArgs,
    settings: &Settings,
    loader: &mut Loader,
    rep: &mut RunReport,
) -> CliResult<PipelineRun> {
    let source = match (&args.builtin, &args.input) {
        (Some(b), None) => Source::Builtin(b.clone()),
        (None, Some(i)) => Source::File(i.clone()),
        _ => return Err(CliError::Usage("give exactly one of --builtin and --input".into())),
    };
    if args.c.is_some() && name != PipelineName::ComoduleTwist {
        return Err(CliError::Usage("--c applies only to comodule-twist".into()));
    }
    if (args.r.is_some() || args.alpha.is_some()) && name != PipelineName::SqtDouble {
        return Err(CliError::Usage("--r and --alpha apply only to sqt-double".into()));
    }
    if matches!(source, Source::File(_)) && (args.c.is_some() || args.r.is_some() || args.alpha.is_some()) {
        return Err(CliError::Usage("instance parameters apply only to --builtin".into()));
    }
    let run = match name {
        PipelineName::ComoduleTwist => {
            let (made, label) = match &source {
                Source::Builtin(b) => match &args.c {
                    Some(c) => {
                        if b != "kC2" {
                            return Err(CliError::Usage("--c deforms the builtin kC2 only".into()));
                        }
                        builtin_hopf(b, settings, loader)?;
                        let field = settings.field();
                        let c = field.parse(c).map_err(|e| CliError::Usage(e.to_string()))?;
                        (NuTwist::c_deformation(field, &c), format!("kC2, c = {c}, over {field}"))
                    }
                    None => {
                        let h = builtin_hopf(b, settings, loader)?;
                        let label = format!("{b}, trivial ν, over {}", h.field());
                        (Ok(NuTwist::trivial(ComoduleAlgebra::regular(&h))), label)
                    }
                },
                Source::File(path) => {
                    let def = loader.load(path)?;
                    settings.guard(path, product_dim(&def))?;
                    match def {
                        Definition::NuTwist(ca, nu) => (NuTwist::new(ca, nu), path.clone()),
                        other => match other.into_kind(Kind::ComoduleAlgebra, path)? {
                            Definition::ComoduleAlgebra(ca) => (Ok(NuTwist::trivial(ca)), format!("{path}, trivial ν")),
                            _ => unreachable!(),
                        },
                    }
                }
            };
            let Some(n) = outcome(rep, "ν is convolution invertible", Hypothesis, made)? else {
                return Ok(PipelineRun::new(name.name(), label));
            };
            comodule_twist_pipeline(&n, &label)
        }
        PipelineName::Homogenization => {
            let (ca, label) = match &source {
                Source::Builtin(b) => {
                    let h = builtin_hopf(b, settings, loader)?;
                    let label = format!("{b} coacting on itself, over {}", h.field());
                    (ComoduleAlgebra::regular(&h), label)
                }
                Source::File(path) => match loader.load_as(path, Kind::ComoduleAlgebra)? {
                    Definition::ComoduleAlgebra(ca) => (ca, path.clone()),
                    _ => unreachable!(),
                },
            };
            settings.guard(&label, ca.algebra().dim() * ca.hopf().dim())?;
            homogenization_pipeline(&HomogenizationInstance::new(ca), &label)
        }
        PipelineName::SqtDouble => {
            let (e, label) = match &source {
                Source::Builtin(b) => sqt_element(b, args, settings, loader)?,
                Source::File(path) => match loader.load_as(path, Kind::SqtElement)? {
                    Definition::SqtElement(e) => {
                        settings.guard(path, e.hopf().dim() * e.hopf().dim())?;
                        (e, path.clone())
                    }
                    _ => unreachable!(),
                },
            };
            sqt_double_pipeline(&e, &label)
        }
    };
    rep.stages.extend(run.stages.iter().cloned());
    Ok(run)
}

enum Source {
    Builtin(String),
    File(String),
}

pub fn list_builtins() -> String {
    let mut out = String::new();
    for b in builtins::BUILTINS {
        out.push_str(&format!("builtin:{:<8} dim {}  {}\n", b.name, b.labels.len(), b.description));
    }
    out
}
