//! Twisting maps `R: B ⊗ A → A ⊗ B` and twisted tensor products `A ⊗_R B`.
//!
//! Writing `R(b ⊗ a) = a_R ⊗ b_R`, a twisting map satisfies
//!
//! ```text
//! a_R ⊗ 1_R = a ⊗ 1
//! 1_R ⊗ b_R = 1 ⊗ b
//! (aa')_R ⊗ b_R = a_R a'_r ⊗ b_{R_r}
//! a_R ⊗ (bb')_R = a_{R_r} ⊗ b_r b'_R
//! ```
//!
//! and then `(a ⊗ b)(a' ⊗ b') = a a'_R ⊗ b_R b'` is associative with unit
//! `1 ⊗ 1`.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::linmap::LinMap;
use crate::report::Report;

pub const AXIOM_UNIT_B: &str = "a_R ⊗ 1_R = a ⊗ 1";
pub const AXIOM_UNIT_A: &str = "1_R ⊗ b_R = 1 ⊗ b";
pub const AXIOM_MULT_A: &str = "(aa')_R ⊗ b_R = a_R a'_r ⊗ b_Rr";
pub const AXIOM_MULT_B: &str = "a_R ⊗ (bb')_R = a_Rr ⊗ b_r b'_R";

/// Two algebras and a candidate twisting map between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistingData {
    a: Algebra,
    b: Algebra,
    r: LinMap,
}

impl TwistingData {
    pub fn new(a: Algebra, b: Algebra, r: LinMap) -> Result<Self> {
        let (na, nb) = (a.dim(), b.dim());
        if r.dom_dim() != na * nb || r.cod_dim() != na * nb {
            return Err(Error::Dimension(format!(
                "twisting map must be B⊗A → A⊗B ({}x{}), got {}x{}",
                na * nb,
                na * nb,
                r.cod_dim(),
                r.dom_dim()
            )));
        }
        if a.field() != b.field() || r.field() != a.field() {
            return Err(Error::FieldMismatch { left: a.field(), right: b.field() });
        }
        let r = r.reshape(vec![nb, na], vec![na, nb])?;
        Ok(TwistingData { a, b, r })
    }

    /// `R = τ`, giving the ordinary tensor product.
    pub fn flip(a: Algebra, b: Algebra) -> Result<Self> {
        let r = LinMap::flip(a.field(), b.dim(), a.dim());
        TwistingData::new(a, b, r)
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn r(&self) -> &LinMap {
        &self.r
    }

    /// The four twisting axioms, each as an equality of composite maps.
    pub fn check_axioms(&self) -> Report {
        let mut rep = Report::new("twisting map");
        let (a, b, r) = (&self.a, &self.b, &self.r);
        let (id_a, id_b) = (a.id(), b.id());
        let t = |x: &LinMap, y: &LinMap| x.tensor(y).expect("dims");
        let c = |inner: &LinMap, outer: &LinMap| inner.then(outer).expect("dims");

        // A → A⊗B
        rep.check_maps(AXIOM_UNIT_B, &c(&t(b.unit(), &id_a), r), &t(&id_a, b.unit()));
        // B → A⊗B
        rep.check_maps(AXIOM_UNIT_A, &c(&t(&id_b, a.unit()), r), &t(a.unit(), &id_b));
        // B⊗A⊗A → A⊗B
        let lhs = c(&t(&id_b, a.mult()), r);
        let rhs = c(&c(&t(r, &id_a), &t(&id_a, r)), &t(a.mult(), &id_b));
        rep.check_maps(AXIOM_MULT_A, &lhs, &rhs);
        // B⊗B⊗A → A⊗B
        let lhs = c(&t(b.mult(), &id_a), r);
        let rhs = c(&c(&t(&id_b, r), &t(r, &id_b)), &t(&id_a, b.mult()));
        rep.check_maps(AXIOM_MULT_B, &lhs, &rhs);
        rep
    }

    /// `(μ_A ⊗ μ_B) ∘ (id ⊗ R ⊗ id)` on `A ⊗ B ⊗ A ⊗ B`, whether or not `R`
    /// is a twisting map.
    pub fn product_mult(&self) -> LinMap {
        let (id_a, id_b) = (self.a.id(), self.b.id());
        let middle = id_a.tensor(&self.r).and_then(|m| m.tensor(&id_b)).expect("dims");
        middle.then(&self.a.mult().tensor(self.b.mult()).expect("dims")).expect("dims")
    }

    pub fn product_unit(&self) -> LinMap {
        self.a.unit().tensor(self.b.unit()).expect("dims")
    }

    /// The algebra `A ⊗_R B` built from the formula without any check.
    pub fn raw_product(&self) -> Algebra {
        Algebra::new(self.product_mult(), self.product_unit()).expect("dims")
    }

    /// Checks the axioms together with associativity and unitality of `A`
    /// and `B`; on success the data carries its certificate.
    pub fn certify(self) -> Result<CertifiedTwisting> {
        let mut report = Report::new("twisting data");
        let mut ra = self.a.certify();
        ra.subject = "algebra A".into();
        let mut rb = self.b.certify();
        rb.subject = "algebra B".into();
        report.merge(ra);
        report.merge(rb);
        report.merge(self.check_axioms());
        if report.passed() {
            Ok(CertifiedTwisting { data: self, report })
        } else {
            Err(Error::HypothesesFailed(Box::new(report)))
        }
    }
}

/// Twisting data whose axioms have been verified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedTwisting {
    data: TwistingData,
    report: Report,
}

impl CertifiedTwisting {
    pub fn data(&self) -> &TwistingData {
        &self.data
    }

    pub fn report(&self) -> &Report {
        &self.report
    }

    pub fn a(&self) -> &Algebra {
        &self.data.a
    }

    pub fn b(&self) -> &Algebra {
        &self.data.b
    }

    pub fn r(&self) -> &LinMap {
        &self.data.r
    }
}

/// `A ⊗_R B` together with the data it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedProduct {
    source: CertifiedTwisting,
    product: Algebra,
}

impl TwistedProduct {
    pub fn source(&self) -> &CertifiedTwisting {
        &self.source
    }

    pub fn product(&self) -> &Algebra {
        &self.product
    }

    pub fn into_product(self) -> Algebra {
        self.product
    }
}

/// Builds `A ⊗_R B` and re-verifies associativity and unitality.
pub fn build_twisted_product(t: &CertifiedTwisting) -> Result<TwistedProduct> {
    let product = t.data.raw_product();
    let check = product.certify();
    if !check.passed() {
        return Err(Error::Internal { stage: "twisted product".into(), report: Box::new(check) });
    }
    Ok(TwistedProduct { source: t.clone(), product })
}
