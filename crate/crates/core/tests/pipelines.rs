use invtwist::algebra::ComoduleAlgebra;
use invtwist::constructions::{group_algebra, kc2_triangular_terms, sweedler_h4, FiniteGroup, SqtElement};
use invtwist::suite::{
    comodule_twist_pipeline, homogenization_pipeline, sqt_double_pipeline, HomogenizationInstance, NuTwist,
    PipelineRun,
};
use invtwist::{Field, LinMap, Scalar, SparseVec};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Stage names with verdicts and the names of failed identities; witnesses
/// are basis-dependent and left out.
fn verdicts(run: &PipelineRun) -> Vec<(String, bool, Vec<String>)> {
    run.stages
        .iter()
        .map(|s| (s.name.clone(), s.passed, s.report.failures.iter().map(|f| f.axiom.clone()).collect()))
        .collect()
}

fn random_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> LinMap {
    loop {
        let rows: Vec<Vec<Scalar>> =
            (0..n).map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(-3..=3))).collect()).collect();
        let m = LinMap::from_dense(field, vec![n], vec![n], &rows).unwrap();
        if m.invert().is_ok() {
            return m;
        }
    }
}

/// A random signed permutation followed by two random shears; invertible
/// by construction and sparse enough to keep dim-16 composites cheap.
fn random_sparse_invertible(rng: &mut ChaCha8Rng, field: Field, n: usize) -> LinMap {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|_| rng.gen::<u32>());
    let signed = order.iter().enumerate().map(|(c, &r)| (r, c, field.from_i64(if rng.gen() { 1 } else { -1 })));
    let mut p = LinMap::from_triples(field, vec![n], vec![n], signed).unwrap();
    for _ in 0..2 {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let shear = (0..n)
            .map(|k| (k, k, field.one()))
            .chain([(i, j, field.from_i64(rng.gen_range(1..=2)))]);
        p = LinMap::from_triples(field, vec![n], vec![n], shear).unwrap().compose(&p).unwrap();
    }
    p
}

#[test]
fn c_deformation_over_q_and_gf5() {
    let q = Field::Rationals;
    let gf5 = Field::gf(5).unwrap();
    for (field, c) in [(q, q.from_i64(-1)), (gf5, gf5.from_i64(2))] {
        let n = NuTwist::c_deformation(field, &c).unwrap();
        let run = comodule_twist_pipeline(&n, "kC2");
        assert!(run.passed(), "{}", run.summary());
        let a_nu = run.deformed.as_ref().unwrap();
        assert_eq!(a_nu.basis_product(1, 1), &SparseVec::basis(field, 2, 0).scaled(&c));
    }
}

#[test]
fn basis_change_keeps_comodule_twist_verdicts() {
    let q = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let good = NuTwist::c_deformation(q, &q.from_i64(-1)).unwrap();
    // ν(g) = [[1, 1], [0, 1]] breaks ν(h)(1) = ε(h)1
    let ca = good.comodule_algebra().clone();
    let one = q.one();
    let bad_nu = LinMap::from_triples(
        q,
        vec![2, 2],
        vec![2],
        [(0, 0, one.clone()), (1, 1, one.clone()), (0, 2, one.clone()), (0, 3, one.clone()), (1, 3, one)],
    )
    .unwrap();
    let bad = NuTwist::new(ca, bad_nu).unwrap();
    for n in [good, bad] {
        let before = comodule_twist_pipeline(&n, "kC2");
        let p_a = random_invertible(&mut rng, q, 2);
        let p_h = random_invertible(&mut rng, q, 2);
        let moved = n.change_basis(&p_a, &p_h).unwrap();
        let after = comodule_twist_pipeline(&moved, "kC2 moved");
        assert_eq!(verdicts(&before), verdicts(&after));
    }
}

#[test]
fn basis_change_keeps_homogenization_verdicts() {
    let q = Field::Rationals;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let h = sweedler_h4(q).unwrap();
    let ca = ComoduleAlgebra::regular(&h);
    let p = random_sparse_invertible(&mut rng, q, 4);
    let moved = ca.change_basis(&p, &p).unwrap();
    let before = homogenization_pipeline(&HomogenizationInstance::new(ca), "H4");
    let after = homogenization_pipeline(&HomogenizationInstance::new(moved), "H4 moved");
    assert!(before.passed());
    assert_eq!(verdicts(&before), verdicts(&after));
}

#[test]
fn triangular_double_over_gf5() {
    let f = Field::gf(5).unwrap();
    let k = group_algebra(&FiniteGroup::cyclic(2).unwrap(), f);
    let terms = kc2_triangular_terms(f).unwrap();
    // ½ = 3 in GF(5)
    assert_eq!(terms[0].2, f.from_i64(3));
    let e = SqtElement::from_terms(k, terms).unwrap();
    let run = sqt_double_pipeline(&e, "kC2 GF(5)");
    assert!(run.passed(), "{}", run.summary());
}

#[test]
fn homogenization_of_group_algebras() {
    let q = Field::Rationals;
    let c2 = FiniteGroup::cyclic(2).unwrap();
    for g in [c2.clone(), FiniteGroup::cyclic(3).unwrap(), c2.direct_product(&c2).unwrap()] {
        let h = group_algebra(&g, q);
        let run = homogenization_pipeline(&HomogenizationInstance::new(ComoduleAlgebra::regular(&h)), "group");
        assert!(run.passed(), "{}", run.summary());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn every_nonzero_c_deformation_passes(c in -20i64..=20, p in prop::sample::select(vec![0u64, 7, 11])) {
        let field = if p == 0 { Field::Rationals } else { Field::gf(p).unwrap() };
        let c = field.from_i64(c);
        match NuTwist::c_deformation(field, &c) {
            Ok(n) => {
                let run = comodule_twist_pipeline(&n, "kC2");
                prop_assert!(run.passed(), "{}", run.summary());
                prop_assert!(run.violations().is_empty());
            }
            Err(invtwist::Error::NotConvolutionInvertible(_)) => prop_assert!(c.is_zero()),
            Err(e) => prop_assert!(false, "unexpected error {e}"),
        }
    }

    #[test]
    fn perturbed_r_never_violates_an_implication(a in -2i64..=2, b in -2i64..=2, c in -2i64..=2, d in -2i64..=2) {
        let q = Field::Rationals;
        let k = group_algebra(&FiniteGroup::cyclic(2).unwrap(), q);
        let terms = [(0, 0, q.from_i64(a)), (0, 1, q.from_i64(b)), (1, 0, q.from_i64(c)), (1, 1, q.from_i64(d))];
        if let Ok(e) = SqtElement::from_terms(k, terms) {
            let run = sqt_double_pipeline(&e, "kC2 perturbed");
            prop_assert!(run.violations().is_empty(), "{}", run.summary());
        }
    }
}
