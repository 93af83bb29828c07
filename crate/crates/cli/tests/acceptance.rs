//! The acceptance criteria, run in order with one PASS/FAIL line each.
//! Every check is exact; the process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;

use invtwist::constructions::{
    double_twisting, drinfeld_double, group_algebra, h4_quasitriangular_terms, kc2_triangular_terms, smash_twisting,
    sweedler_h4, FiniteGroup, SqtElement,
};
use invtwist::invariance::{build_isomorphism, derive_twisted_map, InvarianceData};
use invtwist::suite::{
    comodule_twist_pipeline, homogenization_pipeline, sqt_double_pipeline, HomogenizationInstance, NuTwist,
    PipelineRun, SQT1,
};
use invtwist::twisting::{build_twisted_product, CertifiedTwisting, TwistingData, AXIOM_UNIT_A, AXIOM_UNIT_B};
use invtwist::{ComoduleAlgebra, Field, HopfAlgebra, LinMap, Scalar, SparseVec};
use invtwist_cli::defs::{parse_str, Definition};
use invtwist_cli::emit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn q() -> Field {
    Field::Rationals
}

fn gf5() -> Field {
    Field::gf(5).unwrap()
}

fn kc2(f: Field) -> HopfAlgebra {
    group_algebra(&FiniteGroup::cyclic(2).unwrap(), f)
}

fn klein(f: Field) -> HopfAlgebra {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    group_algebra(&c2.direct_product(&c2).unwrap(), f)
}

fn h4(f: Field) -> HopfAlgebra {
    sweedler_h4(f).unwrap()
}

fn passed_stage(run: &PipelineRun, name: &str) -> Result<(), String> {
    match run.stage(name) {
        Some(s) if s.passed => Ok(()),
        Some(_) => Err(format!("{} on {}: stage {name:?} failed\n{}", run.pipeline, run.instance, run.summary())),
        None => Err(format!("{} on {}: stage {name:?} missing\n{}", run.pipeline, run.instance, run.summary())),
    }
}

fn hopf_axioms() -> Outcome {
    let mut count = 0;
    for f in [q(), gf5()] {
        for (name, h) in [("kC2", kc2(f)), ("kC2xC2", klein(f)), ("H4", h4(f)), ("H4*", h4(f).dual())] {
            let rep = h.certify();
            ensure!(rep.passed(), "{name} over {f}:\n{rep}");
            count += 1;
        }
    }
    let h = h4(q());
    let mut s = h.antipode().clone();
    // S(x) = +gx instead of -gx
    s = s.add(&LinMap::from_triples(q(), vec![4], vec![4], [(3, 2, q().from_i64(2))]).unwrap()).unwrap();
    let mutated = h.with_antipode(s).map_err(|e| e.to_string())?;
    let rep = mutated.check_antipode();
    let fail = rep.failures.first().ok_or("mutated antipode passed")?;
    ensure!(fail.axiom.contains("antipode"), "unexpected failure {}", fail.axiom);
    ensure!(fail.witness == vec![2], "witness {:?}, expected x = [2]", fail.witness);
    Ok(format!("{count} Hopf algebras certified; S(x) = +gx fails {} at x", fail.axiom))
}

/// Every certified twisting map the suite produces, with a name.
fn certified_twistings() -> Vec<(String, CertifiedTwisting)> {
    let mut out = Vec::new();
    let hs = [("kC2", kc2(q())), ("kC2xC2", klein(q())), ("H4", h4(q())), ("H4*", h4(q()).dual())];
    for (na, a) in &hs {
        for (nb, b) in &hs {
            if a.dim() * b.dim() <= 16 {
                let t = TwistingData::flip(a.algebra().clone(), b.algebra().clone()).unwrap().certify().unwrap();
                out.push((format!("flip {na} ⊗ {nb}"), t));
            }
        }
    }
    for (n, h) in &hs[..3] {
        out.push((format!("smash {n}"), smash_twisting(&ComoduleAlgebra::regular(h)).unwrap().certify().unwrap()));
        out.push((format!("double {n}"), double_twisting(h).unwrap().certify().unwrap()));
        let inst = HomogenizationInstance::new(ComoduleAlgebra::regular(h));
        out.push((format!("homogenization R' {n}"), derive_twisted_map(&inst.invariance_data().unwrap()).unwrap()));
    }
    for (f, c) in [(q(), q().from_i64(-1)), (gf5(), gf5().from_i64(2))] {
        let n = NuTwist::c_deformation(f, &c).unwrap();
        let ca = ComoduleAlgebra::regular(&kc2(f)).with_algebra(n.twisted_algebra()).unwrap();
        out.push((format!("smash A_ν, c = {c}"), smash_twisting(&ca).unwrap().certify().unwrap()));
    }
    let e = SqtElement::from_terms(kc2(q()), kc2_triangular_terms(q()).unwrap()).unwrap();
    if let Some(rp) = sqt_double_pipeline(&e, "kC2").rprime {
        out.push(("sqt R' kC2".into(), rp));
    }
    out
}

fn twisting_core() -> Outcome {
    let pairs = [(kc2(q()), h4(q())), (h4(q()), klein(q())), (h4(q()).dual(), h4(q()))];
    for (a, b) in &pairs {
        let t = TwistingData::flip(a.algebra().clone(), b.algebra().clone()).unwrap().certify().unwrap();
        let p = build_twisted_product(&t).map_err(|e| e.to_string())?;
        ensure!(*p.product() == a.algebra().tensor_product(b.algebra()).unwrap(), "flip product differs");
    }
    let zero = LinMap::zero(q(), vec![2, 2], vec![2, 2]).unwrap();
    let z = TwistingData::new(kc2(q()).algebra().clone(), kc2(q()).algebra().clone(), zero).unwrap();
    let rep = z.check_axioms();
    ensure!(rep.failure(AXIOM_UNIT_A).is_some() && rep.failure(AXIOM_UNIT_B).is_some(), "zero map:\n{rep}");
    ensure!(z.certify().is_err(), "zero map certified");
    let all = certified_twistings();
    for (name, t) in &all {
        ensure!(t.a().dim() * t.b().dim() <= 16, "{name} exceeds dimension 16");
        let p = build_twisted_product(t).map_err(|e| format!("{name}: {e}"))?;
        let rep = p.product().check_associative();
        ensure!(rep.passed(), "{name}:\n{rep}");
    }
    Ok(format!("flip equals tensor product on 3 pairs; zero map fails unit axioms; {} products associative", all.len()))
}

fn trivial_invariance() -> Outcome {
    let cases = [
        TwistingData::flip(kc2(q()).algebra().clone(), h4(q()).algebra().clone()).unwrap(),
        smash_twisting(&ComoduleAlgebra::regular(&h4(q()))).unwrap(),
    ];
    for t in cases {
        let d = InvarianceData::trivial(t.certify().unwrap());
        let rp = derive_twisted_map(&d).map_err(|e| e.to_string())?;
        ensure!(rp.r().entries_eq(d.twisting().r()), "R' differs from R");
        let cert = build_isomorphism(&d, &rp).map_err(|e| e.to_string())?;
        let n = cert.phi.dom_dim();
        ensure!(cert.passed() && cert.phi.entries_eq(&LinMap::id(q(), n)), "φ is not the identity");
    }
    Ok("R' = R and φ = id on 2 pairs".into())
}

fn comodule_twisting() -> Outcome {
    for (f, c) in [(q(), q().from_i64(-1)), (gf5(), gf5().from_i64(2))] {
        let n = NuTwist::c_deformation(f, &c).map_err(|e| e.to_string())?;
        let run = comodule_twist_pipeline(&n, "kC2");
        for stage in [
            "conditions on ν",
            "relations for ν⁻¹",
            "A_ν is a comodule algebra",
            "derived twisting map",
            "R' = R",
            "isomorphism",
        ] {
            passed_stage(&run, stage)?;
        }
        let cert = run.certificate.as_ref().ok_or("no isomorphism certificate")?;
        ensure!(cert.bijective && cert.unital && cert.multiplicative, "certificate incomplete");
        let a_nu = run.deformed.as_ref().ok_or("no deformed algebra")?;
        let g2 = a_nu.basis_product(1, 1);
        ensure!(*g2 == SparseVec::basis(f, 2, 0).scaled(&c), "g * g = {g2}, expected {c}·1");
        ensure!(a_nu != kc2(f).algebra(), "A_ν equals A");
    }
    Ok("c = -1 over Q and c = 2 over GF(5): all stages pass, g * g = c·1".into())
}

fn homogenization() -> Outcome {
    let h = h4(q());
    let run = homogenization_pipeline(&HomogenizationInstance::new(ComoduleAlgebra::regular(&h)), "H4");
    for stage in ["R'(h ⊗ a) = a₍₀₎ ⊗ S(a₍₁₎)h a₍₂₎", "A ⊗_R' H = A[H]", "isomorphism"] {
        passed_stage(&run, stage)?;
    }
    ensure!(run.passed(), "{}", run.summary());
    let small = homogenization_pipeline(&HomogenizationInstance::new(ComoduleAlgebra::regular(&kc2(q()))), "kC2");
    ensure!(small.passed(), "{}", small.summary());
    Ok("H4 (dim 16) and kC2 pass every stage".into())
}

fn sqt_double() -> Outcome {
    for f in [q(), gf5()] {
        let e = SqtElement::from_terms(kc2(f), kc2_triangular_terms(f).unwrap()).map_err(|e| e.to_string())?;
        let run = sqt_double_pipeline(&e, "kC2");
        for stage in [
            "semiquasitriangular conditions",
            "auxiliary relation",
            "f and g are mutually inverse",
            "star algebra",
            "invariance hypotheses",
            "R'(h ⊗ φ) = h₁⇀φ↼S⁻¹(u¹h₃r¹) ⊗ u²h₂r²",
            "isomorphism equals g",
        ] {
            passed_stage(&run, stage)?;
        }
        ensure!(run.passed(), "{}", run.summary());
    }
    let bad = SqtElement::from_terms(kc2(q()), [(0, 1, q().one())]).map_err(|e| e.to_string())?;
    let run = sqt_double_pipeline(&bad, "kC2, r = 1 ⊗ g");
    let stage = run.failed_stage().ok_or("r = 1 ⊗ g passed")?;
    let fail = stage.report.failure(SQT1).ok_or("SQT1 did not fail")?;
    ensure!(fail.lhs == SparseVec::basis(q(), 8, 1), "recorded lhs changed: {}", fail.lhs);
    ensure!(fail.rhs == SparseVec::basis(q(), 8, 0), "recorded rhs changed: {}", fail.rhs);
    let d = drinfeld_double(&h4(q())).map_err(|e| e.to_string())?;
    let rep = d.check_associative();
    ensure!(rep.passed() && d.dim().pow(3) == 4096, "D(H4) associativity:\n{rep}");
    Ok("kC2 triangular over Q and GF(5) pass; r = 1 ⊗ g fails SQT1; D(H4) associative on 4096 triples".into())
}

/// Every pipeline instance the suite knows, including failing ones.
fn all_runs() -> Vec<PipelineRun> {
    let mut runs = Vec::new();
    for f in [q(), gf5(), Field::gf(7).unwrap()] {
        for c in [-1, 2, 3] {
            let c = f.from_i64(c);
            runs.push(comodule_twist_pipeline(&NuTwist::c_deformation(f, &c).unwrap(), "kC2"));
        }
        for h in [kc2(f), klein(f), h4(f)] {
            let ca = ComoduleAlgebra::regular(&h);
            runs.push(comodule_twist_pipeline(&NuTwist::trivial(ca.clone()), "trivial ν"));
            runs.push(homogenization_pipeline(&HomogenizationInstance::new(ca), "regular"));
            let trivial = ComoduleAlgebra::trivial(h.algebra().clone(), h.clone()).unwrap();
            runs.push(homogenization_pipeline(&HomogenizationInstance::new(trivial), "trivial coaction"));
            runs.push(sqt_double_pipeline(&SqtElement::trivial(h.clone()), "r = 1 ⊗ 1"));
        }
        let e = SqtElement::from_terms(kc2(f), kc2_triangular_terms(f).unwrap()).unwrap();
        runs.push(sqt_double_pipeline(&e, "kC2 triangular"));
        for alpha in [0, 1, -2] {
            let terms = h4_quasitriangular_terms(f, &f.from_i64(alpha)).unwrap();
            runs.push(sqt_double_pipeline(&SqtElement::from_terms(h4(f), terms).unwrap(), "H4 R_α"));
        }
        let bad = SqtElement::from_terms(kc2(f), [(0, 1, f.one())]).unwrap();
        runs.push(sqt_double_pipeline(&bad, "r = 1 ⊗ g"));
        let one = f.one();
        let bad_nu = LinMap::from_triples(
            f,
            vec![2, 2],
            vec![2],
            [(0, 0, one.clone()), (1, 1, one.clone()), (0, 2, one.clone()), (0, 3, one.clone()), (1, 3, one)],
        )
        .unwrap();
        runs.push(comodule_twist_pipeline(&NuTwist::new(ComoduleAlgebra::regular(&kc2(f)), bad_nu).unwrap(), "bad ν"));
    }
    runs
}

fn implication_ledger() -> Outcome {
    let runs = all_runs();
    let (mut passed, mut refused) = (0, 0);
    for run in &runs {
        let v = run.violations();
        ensure!(v.is_empty(), "{} on {}: conclusion {:?} failed after its hypotheses passed", run.pipeline, run.instance, v[0].name);
        if run.passed() {
            passed += 1;
        } else {
            refused += 1;
        }
    }
    ensure!(refused >= 2, "negative instances were not refused");
    Ok(format!("{} runs, {passed} passed, {refused} refused at a hypothesis, no violations", runs.len()))
}

fn verdicts(run: &PipelineRun) -> Vec<(String, bool, Vec<String>)> {
    run.stages
        .iter()
        .map(|s| (s.name.clone(), s.passed, s.report.failures.iter().map(|f| f.axiom.clone()).collect()))
        .collect()
}

fn random_invertible(rng: &mut ChaCha8Rng, f: Field, n: usize) -> LinMap {
    loop {
        let rows: Vec<Vec<Scalar>> =
            (0..n).map(|_| (0..n).map(|_| f.from_i64(rng.gen_range(-4..=4))).collect()).collect();
        let m = LinMap::from_dense(f, vec![n], vec![n], &rows).unwrap();
        if m.invert().is_ok() && !m.entries_eq(&LinMap::id(f, n)) {
            return m;
        }
    }
}

fn basis_independence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let p_a = random_invertible(&mut rng, q(), 2);
    let p_h = random_invertible(&mut rng, q(), 2);
    let good = NuTwist::c_deformation(q(), &q().from_i64(-1)).unwrap();
    let before = comodule_twist_pipeline(&good, "kC2");
    let moved = good.change_basis(&p_a, &p_h).map_err(|e| e.to_string())?;
    let after = comodule_twist_pipeline(&moved, "kC2, new basis");
    ensure!(verdicts(&before) == verdicts(&after), "verdicts differ:\n{}\n{}", before.summary(), after.summary());
    ensure!(after.passed(), "{}", after.summary());
    Ok(format!("{} stages identical after a random change of basis", after.stages.len()))
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn cli(args: &[&str]) -> i32 {
    let o = Command::new(env!("CARGO_BIN_EXE_invtwist")).args(args).current_dir(corpus()).output().expect("runs");
    o.status.code().unwrap_or(-1)
}

fn cli_roundtrip() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    let builds = [
        ("double", "builtin:kC2", "double.toml", "algebra"),
        ("twisted-product", "h4-c2-flip.twisting.toml", "product.toml", "algebra"),
        ("smash", "builtin:H4", "smash.toml", "algebra"),
        ("derive-rprime", "h4-homogenization.invariance.toml", "rprime.toml", "linmap"),
    ];
    for (what, input, out, kind) in builds {
        let first = d(out);
        ensure!(cli(&["build", what, input, "--out", &first]) == 0, "build {what} failed");
        let again = d(&format!("again-{out}"));
        ensure!(cli(&["build", what, input, "--out", &again]) == 0, "rebuild {what} failed");
        let text = std::fs::read_to_string(&first).map_err(|e| e.to_string())?;
        ensure!(text == std::fs::read_to_string(&again).unwrap(), "{what}: rebuild is not byte-identical");
        let reemitted = match parse_str(&text, dir.path()).map_err(|e| e.to_string())? {
            Definition::Algebra(a) => {
                ensure!(a.certify().passed(), "{what}: parsed algebra fails certification");
                emit::algebra(&a, None)
            }
            Definition::LinMap(m) => emit::linmap(&m),
            other => return Err(format!("{what}: parsed as {}", other.kind())),
        };
        ensure!(reemitted == text, "{what}: serialize after parse changed the bytes");
        ensure!(cli(&["check", kind, &first]) == 0, "{what}: re-check failed");
    }
    // the derived map re-certifies as a twisting map
    let twisting =
        "format = 1\nkind = \"twisting-data\"\nfield = \"Q\"\na = \"builtin:H4\"\nb = \"builtin:H4\"\nr = \"rprime.toml\"\n";
    std::fs::write(d("rprime.twisting.toml"), twisting).unwrap();
    ensure!(cli(&["check", "twisting", &d("rprime.twisting.toml")]) == 0, "derived R' fails as a twisting map");
    Ok(format!("{} built objects re-parse, re-serialize byte-identically and re-certify", builds.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("certification suite", hopf_axioms),
        ("twisting core", twisting_core),
        ("trivial invariance", trivial_invariance),
        ("comodule algebra twisting", comodule_twisting),
        ("external homogenization", homogenization),
        ("semiquasitriangular double", sqt_double),
        ("implication ledger", implication_ledger),
        ("basis independence", basis_independence),
        ("CLI round-trip", cli_roundtrip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = started.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("criterion {} [PASS] {name}: {detail} ({ms} ms)", i + 1),
            Err(reason) => {
                failed += 1;
                println!("criterion {} [FAIL] {name}: {reason}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
