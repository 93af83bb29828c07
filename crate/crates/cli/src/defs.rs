//! Definition files: TOML documents describing one algebraic object each.
//!
//! Every file starts with three header keys:
//!
//! ```toml
//! format = 1
//! kind = "hopf"
//! field = "Q"          # or "GF:5"
//! ```
//!
//! The remaining keys depend on `kind`; unknown keys are rejected. Scalars
//! are strings such as `"-3"` or `"1/2"` (plain TOML integers are also
//! accepted) and must parse in the declared field. Indices are zero-based.
//!
//! | kind               | keys |
//! |--------------------|------|
//! | `algebra`          | `dim`, `labels?`, `mult = [[i, j, k, c]]` (`eᵢeⱼ` has `c` on `eₖ`), `unit = [[k, c]]` |
//! | `hopf`             | algebra keys, `comult = [[i, j, k, c]]` (`Δ(eᵢ)` has `c` on `eⱼ ⊗ eₖ`), `counit = [[i, c]]`, `antipode = [[i, j, c]]` (`S(eᵢ)` has `c` on `eⱼ`) |
//! | `linmap`           | `dom`, `cod` (factor dimensions), `entries = [[row, col, c]]` on flattened indices |
//! | `comodule-algebra` | `algebra`, `hopf` (references), `coaction` (map) |
//! | `twisting-data`    | `a`, `b` (references), `r` (map `B ⊗ A → A ⊗ B`) |
//! | `invariance-data`  | `twisting`, `aprime` (references), `rho`, `lambda` (maps) |
//! | `star-data`        | `twisting` (reference), `action` (map `B ⊗ A → A`), `rho` (map `A → A ⊗ B`) |
//! | `nu-twist`         | `comodule` (reference), `nu` (map `H ⊗ A → A`) |
//! | `sqt-element`      | `hopf` (reference), `r = [[i, j, c]]` (`r` has `c` on `eᵢ ⊗ eⱼ`) |
//!
//! A reference is a path relative to the referring file, `builtin:<name>`,
//! or `dual:<reference>` for the dual of a Hopf algebra. A Hopf algebra may
//! stand wherever an algebra is expected, and also where a comodule algebra
//! is expected, meaning its regular coaction.
//!
//! A map is either a table `{ entries = [[row, col, c]] }` whose shape is
//! implied by its position, a reference to a `linmap` file, or one of the
//! keywords `flip` (for `r`), `regular` and `trivial` (for `coaction`),
//! `identity` and `zero`.

use std::fmt;
use std::path::{Path, PathBuf};

use invtwist::constructions::SqtElement;
use invtwist::invariance::{InvarianceData, StarData};
use invtwist::twisting::TwistingData;
use invtwist::{Algebra, Coalgebra, ComoduleAlgebra, Field, HopfAlgebra, LinMap, Scalar, SparseVec};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::builtins;
use crate::emit;
use crate::error::{CliError, CliResult};

pub const FORMAT_VERSION: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Algebra,
    Hopf,
    ComoduleAlgebra,
    LinMap,
    TwistingData,
    InvarianceData,
    StarData,
    NuTwist,
    SqtElement,
}

impl Kind {
    pub const ALL: [Kind; 9] = [
        Kind::Algebra,
        Kind::Hopf,
        Kind::ComoduleAlgebra,
        Kind::LinMap,
        Kind::TwistingData,
        Kind::InvarianceData,
        Kind::StarData,
        Kind::NuTwist,
        Kind::SqtElement,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Kind::Algebra => "algebra",
            Kind::Hopf => "hopf",
            Kind::ComoduleAlgebra => "comodule-algebra",
            Kind::LinMap => "linmap",
            Kind::TwistingData => "twisting-data",
            Kind::InvarianceData => "invariance-data",
            Kind::StarData => "star-data",
            Kind::NuTwist => "nu-twist",
            Kind::SqtElement => "sqt-element",
        }
    }

    /// Accepts the file kind names and `twisting` for `twisting-data`.
    pub fn parse(s: &str) -> Option<Kind> {
        if s == "twisting" {
            return Some(Kind::TwistingData);
        }
        Kind::ALL.into_iter().find(|k| k.name() == s)
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Data for the invariance theorem before its twisting map is certified.
#[derive(Clone, Debug)]
pub struct InvarianceSpec {
    pub twisting: TwistingData,
    pub aprime: Algebra,
    pub rho: LinMap,
    pub lambda: LinMap,
}

impl InvarianceSpec {
    pub fn certify(self) -> CliResult<InvarianceData> {
        let t = self.twisting.certify()?;
        Ok(InvarianceData::new(t, self.aprime, self.rho, self.lambda)?)
    }
}

/// Data for a star product before its twisting map is certified.
#[derive(Clone, Debug)]
pub struct StarSpec {
    pub twisting: TwistingData,
    pub action: LinMap,
    pub rho: LinMap,
}

impl StarSpec {
    pub fn certify(self) -> CliResult<StarData> {
        let t = self.twisting.certify()?;
        Ok(StarData::new(t, self.action, self.rho)?)
    }
}

/// The typed content of one definition file.
#[derive(Clone, Debug)]
pub enum Definition {
    Algebra(Algebra),
    Hopf(HopfAlgebra),
    ComoduleAlgebra(ComoduleAlgebra),
    LinMap(LinMap),
    TwistingData(TwistingData),
    InvarianceData(InvarianceSpec),
    StarData(StarSpec),
    /// `ν` is kept raw so that a missing convolution inverse is reported as
    /// a verdict, not a parse error.
    NuTwist(ComoduleAlgebra, LinMap),
    SqtElement(SqtElement),
}

impl Definition {
    pub fn kind(&self) -> Kind {
        match self {
            Definition::Algebra(_) => Kind::Algebra,
            Definition::Hopf(_) => Kind::Hopf,
            Definition::ComoduleAlgebra(_) => Kind::ComoduleAlgebra,
            Definition::LinMap(_) => Kind::LinMap,
            Definition::TwistingData(_) => Kind::TwistingData,
            Definition::InvarianceData(_) => Kind::InvarianceData,
            Definition::StarData(_) => Kind::StarData,
            Definition::NuTwist(..) => Kind::NuTwist,
            Definition::SqtElement(_) => Kind::SqtElement,
        }
    }

    /// Reads the object as `kind`, allowing a Hopf algebra to stand for its
    /// algebra or its regular comodule algebra.
    pub fn into_kind(self, kind: Kind, reference: &str) -> CliResult<Definition> {
        match (self, kind) {
            (d, k) if d.kind() == k => Ok(d),
            (Definition::Hopf(h), Kind::Algebra) => Ok(Definition::Algebra(h.algebra().clone())),
            (Definition::Hopf(h), Kind::ComoduleAlgebra) => Ok(Definition::ComoduleAlgebra(ComoduleAlgebra::regular(&h))),
            (d, k) => Err(CliError::definition(reference, format!("expected {k}, found {}", d.kind()))),
        }
    }
}

/// Digest of one input as it was read.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct InputDigest {
    pub reference: String,
    pub sha256: String,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Lit {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlgebraBody {
    dim: usize,
    labels: Option<Vec<String>>,
    mult: Vec<(usize, usize, usize, Lit)>,
    unit: Vec<(usize, Lit)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HopfBody {
    dim: usize,
    labels: Option<Vec<String>>,
    mult: Vec<(usize, usize, usize, Lit)>,
    unit: Vec<(usize, Lit)>,
    comult: Vec<(usize, usize, usize, Lit)>,
    counit: Vec<(usize, Lit)>,
    antipode: Vec<(usize, usize, Lit)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LinMapBody {
    dom: Vec<usize>,
    cod: Vec<usize>,
    entries: Vec<(usize, usize, Lit)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InlineMap {
    entries: Vec<(usize, usize, Lit)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MapSpec {
    Named(String),
    Inline(InlineMap),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComoduleBody {
    algebra: String,
    hopf: String,
    coaction: MapSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TwistingBody {
    a: String,
    b: String,
    r: MapSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InvarianceBody {
    twisting: String,
    aprime: String,
    rho: MapSpec,
    lambda: MapSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StarBody {
    twisting: String,
    action: MapSpec,
    rho: MapSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NuBody {
    comodule: String,
    nu: MapSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SqtBody {
    hopf: String,
    r: Vec<(usize, usize, Lit)>,
}

/// Where a reference is being resolved: the directory of the referring file
/// and the field every nested object must share.
#[derive(Clone)]
struct Scope {
    base: PathBuf,
    field: Option<Field>,
}

/// Loads definitions and records the digest of everything it reads.
pub struct Loader {
    field: Option<Field>,
    inputs: Vec<InputDigest>,
}

impl Loader {
    /// `field` is the field requested on the command line, if any. Files
    /// must agree with it; builtins are built over it (ℚ by default).
    pub fn new(field: Option<Field>) -> Self {
        Loader { field, inputs: Vec::new() }
    }

    /// Digests of every input read so far, sorted and without repeats.
    pub fn inputs(&self) -> Vec<InputDigest> {
        let mut v = self.inputs.clone();
        v.sort();
        v.dedup();
        v
    }

    pub fn load(&mut self, reference: &str) -> CliResult<Definition> {
        let scope = Scope { base: PathBuf::from("."), field: self.field };
        Ok(self.resolve(reference, &scope)?.0)
    }

    pub fn load_as(&mut self, reference: &str, kind: Kind) -> CliResult<Definition> {
        self.load(reference)?.into_kind(kind, reference)
    }

    fn resolve(&mut self, reference: &str, scope: &Scope) -> CliResult<(Definition, Option<Vec<String>>)> {
        if let Some(name) = reference.strip_prefix("builtin:") {
            let field = scope.field.unwrap_or(Field::Rationals);
            let h = builtins::hopf(name, field)?;
            let labels: Vec<String> = builtins::lookup(name)
                .map(|b| b.labels.iter().map(|s| s.to_string()).collect())
                .unwrap_or_default();
            let text = emit::hopf(&h, Some(&labels));
            self.inputs.push(InputDigest { reference: format!("{reference}@{field}"), sha256: sha256_hex(text.as_bytes()) });
            return Ok((Definition::Hopf(h), Some(labels)));
        }
        if let Some(inner) = reference.strip_prefix("dual:") {
            let h = self.hopf(inner, scope, reference)?;
            return Ok((Definition::Hopf(h.dual()), None));
        }
        let path = scope.base.join(reference);
        let bytes = std::fs::read(&path).map_err(|source| CliError::Read { path: path.clone(), source })?;
        self.inputs.push(InputDigest { reference: reference.to_string(), sha256: sha256_hex(&bytes) });
        let text = String::from_utf8(bytes).map_err(|_| CliError::definition(reference, "file is not UTF-8"))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_else(|| PathBuf::from("."));
        self.parse_text(&text, reference, &base, scope.field)
    }

    /// Parses one document. `base` resolves nested references.
    fn parse_text(
        &mut self,
        text: &str,
        reference: &str,
        base: &Path,
        expected: Option<Field>,
    ) -> CliResult<(Definition, Option<Vec<String>>)> {
        let bad = |m: String| CliError::definition(reference, m);
        let mut table: toml::Table = text.parse().map_err(|e: toml::de::Error| bad(e.message().to_string()))?;
        let mut take_header = |key: &str| table.remove(key).ok_or_else(|| bad(format!("missing header key {key:?}")));
        let format = take_header("format")?;
        let kind = take_header("kind")?;
        let field = take_header("field")?;
        if format.as_integer() != Some(FORMAT_VERSION) {
            return Err(bad(format!("unsupported format {format}; expected {FORMAT_VERSION}")));
        }
        let kind = kind
            .as_str()
            .and_then(Kind::parse)
            .filter(|k| k.name() == kind.as_str().unwrap_or_default())
            .ok_or_else(|| bad(format!("unknown kind {kind}")))?;
        let field: Field = field
            .as_str()
            .ok_or_else(|| bad("field must be a string".into()))?
            .parse()
            .map_err(|e: invtwist::Error| bad(e.to_string()))?;
        if let Some(f) = expected {
            if f != field {
                return Err(bad(format!("declares field {field} but {f} is required")));
            }
        }
        let scope = Scope { base: base.to_path_buf(), field: Some(field) };
        let cx = Cx { reference, field };
        let value = toml::Value::Table(table);
        let mut labels = None;
        let def = match kind {
            Kind::Algebra => {
                let b: AlgebraBody = cx.body(value)?;
                labels = cx.labels(b.labels, b.dim)?;
                Definition::Algebra(cx.algebra(b.dim, &b.mult, &b.unit)?)
            }
            Kind::Hopf => {
                let b: HopfBody = cx.body(value)?;
                labels = cx.labels(b.labels, b.dim)?;
                let n = b.dim;
                let a = cx.algebra(n, &b.mult, &b.unit)?;
                let comult = cx.triples(vec![n], vec![n, n], b.comult.iter().map(|(i, j, k, c)| (j * n + k, *i, c)))?;
                let counit = cx.triples(vec![n], vec![1], b.counit.iter().map(|(i, c)| (0, *i, c)))?;
                let antipode = cx.triples(vec![n], vec![n], b.antipode.iter().map(|(i, j, c)| (*j, *i, c)))?;
                let coalgebra = Coalgebra::new(comult, counit).map_err(|e| cx.core(e))?;
                Definition::Hopf(HopfAlgebra::new(a, coalgebra, antipode).map_err(|e| cx.core(e))?)
            }
            Kind::LinMap => {
                let b: LinMapBody = cx.body(value)?;
                Definition::LinMap(cx.triples(b.dom, b.cod, b.entries.iter().map(|(r, c, s)| (*r, *c, s)))?)
            }
            Kind::ComoduleAlgebra => {
                let b: ComoduleBody = cx.body(value)?;
                let a = self.algebra(&b.algebra, &scope, reference)?;
                let h = self.hopf(&b.hopf, &scope, reference)?;
                let (na, nh) = (a.dim(), h.dim());
                let coaction = match &b.coaction {
                    MapSpec::Named(s) if s == "regular" => {
                        if a != *h.algebra() {
                            return Err(bad("the regular coaction needs algebra equal to the Hopf algebra".into()));
                        }
                        h.comult().clone()
                    }
                    MapSpec::Named(s) if s == "trivial" => a.id().tensor(h.unit()).map_err(|e| cx.core(e))?,
                    spec => self.map(spec, vec![na], vec![na, nh], &scope, &cx)?,
                };
                Definition::ComoduleAlgebra(ComoduleAlgebra::new(a, h, coaction).map_err(|e| cx.core(e))?)
            }
            Kind::TwistingData => {
                let b: TwistingBody = cx.body(value)?;
                Definition::TwistingData(self.twisting_body(b, &scope, &cx)?)
            }
            Kind::InvarianceData => {
                let b: InvarianceBody = cx.body(value)?;
                let twisting = self.twisting(&b.twisting, &scope, reference)?;
                let aprime = self.algebra(&b.aprime, &scope, reference)?;
                let (na, nb, np) = (twisting.a().dim(), twisting.b().dim(), aprime.dim());
                let rho = self.map(&b.rho, vec![na], vec![np, nb], &scope, &cx)?;
                let lambda = self.map(&b.lambda, vec![np], vec![na, nb], &scope, &cx)?;
                Definition::InvarianceData(InvarianceSpec { twisting, aprime, rho, lambda })
            }
            Kind::StarData => {
                let b: StarBody = cx.body(value)?;
                let twisting = self.twisting(&b.twisting, &scope, reference)?;
                let (na, nb) = (twisting.a().dim(), twisting.b().dim());
                let action = self.map(&b.action, vec![nb, na], vec![na], &scope, &cx)?;
                let rho = self.map(&b.rho, vec![na], vec![na, nb], &scope, &cx)?;
                Definition::StarData(StarSpec { twisting, action, rho })
            }
            Kind::NuTwist => {
                let b: NuBody = cx.body(value)?;
                let ca = match self.resolve(&b.comodule, &scope)?.0.into_kind(Kind::ComoduleAlgebra, &b.comodule)? {
                    Definition::ComoduleAlgebra(ca) => ca,
                    _ => unreachable!(),
                };
                let (na, nh) = (ca.algebra().dim(), ca.hopf().dim());
                let nu = self.map(&b.nu, vec![nh, na], vec![na], &scope, &cx)?;
                Definition::NuTwist(ca, nu)
            }
            Kind::SqtElement => {
                let b: SqtBody = cx.body(value)?;
                let h = self.hopf(&b.hopf, &scope, reference)?;
                let n = h.dim();
                let mut terms = Vec::with_capacity(b.r.len());
                for (i, j, c) in &b.r {
                    if *i >= n || *j >= n {
                        return Err(bad(format!("r term ({i}, {j}) outside dimension {n}")));
                    }
                    terms.push((i * n + j, cx.scalar(c)?));
                }
                let r = SparseVec::from_entries(n * n, terms).map_err(|e| cx.core(e))?;
                Definition::SqtElement(SqtElement::new(h, r).map_err(|e| cx.core(e))?)
            }
        };
        Ok((def, labels))
    }

    fn twisting_body(&mut self, b: TwistingBody, scope: &Scope, cx: &Cx) -> CliResult<TwistingData> {
        let a = self.algebra(&b.a, scope, cx.reference)?;
        let bb = self.algebra(&b.b, scope, cx.reference)?;
        let (na, nb) = (a.dim(), bb.dim());
        let r = match &b.r {
            MapSpec::Named(s) if s == "flip" => LinMap::flip(cx.field, nb, na),
            spec => self.map(spec, vec![nb, na], vec![na, nb], scope, cx)?,
        };
        TwistingData::new(a, bb, r).map_err(|e| cx.core(e))
    }

    fn nested(&mut self, reference: &str, kind: Kind, scope: &Scope, parent: &str) -> CliResult<Definition> {
        let (def, _) = self.resolve(reference, scope).map_err(|e| match e {
            CliError::Definition { reference: inner, message } if inner == reference => {
                CliError::definition(parent, format!("in {inner}: {message}"))
            }
            other => other,
        })?;
        def.into_kind(kind, reference)
    }

    fn algebra(&mut self, reference: &str, scope: &Scope, parent: &str) -> CliResult<Algebra> {
        match self.nested(reference, Kind::Algebra, scope, parent)? {
            Definition::Algebra(a) => Ok(a),
            _ => unreachable!(),
        }
    }

    fn hopf(&mut self, reference: &str, scope: &Scope, parent: &str) -> CliResult<HopfAlgebra> {
        match self.nested(reference, Kind::Hopf, scope, parent)? {
            Definition::Hopf(h) => Ok(h),
            _ => unreachable!(),
        }
    }

    fn twisting(&mut self, reference: &str, scope: &Scope, parent: &str) -> CliResult<TwistingData> {
        match self.nested(reference, Kind::TwistingData, scope, parent)? {
            Definition::TwistingData(t) => Ok(t),
            _ => unreachable!(),
        }
    }

    fn map(&mut self, spec: &MapSpec, dom: Vec<usize>, cod: Vec<usize>, scope: &Scope, cx: &Cx) -> CliResult<LinMap> {
        match spec {
            MapSpec::Inline(m) => cx.triples(dom, cod, m.entries.iter().map(|(r, c, s)| (*r, *c, s))),
            MapSpec::Named(s) if s == "zero" => LinMap::zero(cx.field, dom, cod).map_err(|e| cx.core(e)),
            MapSpec::Named(s) if s == "identity" => {
                LinMap::identity(cx.field, cod.clone()).reshape(dom, cod).map_err(|e| cx.core(e))
            }
            MapSpec::Named(reference) => match self.nested(reference, Kind::LinMap, scope, cx.reference)? {
                Definition::LinMap(m) => m.reshape(dom, cod).map_err(|e| {
                    CliError::definition(cx.reference, format!("map {reference} has the wrong shape: {e}"))
                }),
                _ => unreachable!(),
            },
        }
    }
}

/// Per-document parsing helpers.
struct Cx<'a> {
    reference: &'a str,
    field: Field,
}

impl Cx<'_> {
    fn body<T: DeserializeOwned>(&self, value: toml::Value) -> CliResult<T> {
        value.try_into().map_err(|e: toml::de::Error| CliError::definition(self.reference, e.message().to_string()))
    }

    fn core(&self, e: invtwist::Error) -> CliError {
        match e {
            invtwist::Error::Parse(m) | invtwist::Error::Dimension(m) => CliError::definition(self.reference, m),
            other => CliError::Core(other),
        }
    }

    fn scalar(&self, lit: &Lit) -> CliResult<Scalar> {
        match lit {
            Lit::Int(n) => Ok(self.field.from_i64(*n)),
            Lit::Text(s) => self.field.parse(s).map_err(|e| self.core(e)),
        }
    }

    fn labels(&self, labels: Option<Vec<String>>, dim: usize) -> CliResult<Option<Vec<String>>> {
        match labels {
            Some(l) if l.len() != dim => {
                Err(CliError::definition(self.reference, format!("{} labels for dimension {dim}", l.len())))
            }
            other => Ok(other),
        }
    }

    fn triples<'l>(
        &self,
        dom: Vec<usize>,
        cod: Vec<usize>,
        entries: impl Iterator<Item = (usize, usize, &'l Lit)>,
    ) -> CliResult<LinMap> {
        let mut triples = Vec::new();
        for (r, c, s) in entries {
            triples.push((r, c, self.scalar(s)?));
        }
        LinMap::from_triples(self.field, dom, cod, triples).map_err(|e| self.core(e))
    }

    fn algebra(&self, n: usize, mult: &[(usize, usize, usize, Lit)], unit: &[(usize, Lit)]) -> CliResult<Algebra> {
        if n == 0 {
            return Err(CliError::definition(self.reference, "dimension must be positive"));
        }
        for (i, j, _, _) in mult {
            if *i >= n || *j >= n {
                return Err(CliError::definition(self.reference, format!("mult entry ({i}, {j}) outside dimension {n}")));
            }
        }
        let mult = self.triples(vec![n, n], vec![n], mult.iter().map(|(i, j, k, c)| (*k, i * n + j, c)))?;
        let unit = self.triples(vec![1], vec![n], unit.iter().map(|(k, c)| (*k, 0, c)))?;
        Algebra::new(mult, unit).map_err(|e| self.core(e))
    }
}

/// Parses a document from text, resolving references relative to `base`.
/// Used for round-trip checks of generated files.
pub fn parse_str(text: &str, base: &Path) -> CliResult<Definition> {
    let mut loader = Loader::new(None);
    Ok(loader.parse_text(text, "<text>", base, None)?.0)
}
