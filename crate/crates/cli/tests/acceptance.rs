//! Acceptance gate: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use triharm_cli::{run_command, EXIT_OK};
use triharm_core::algebra::{evaluate, int, rat, Base, DerivedSymbol, Frame, Monomial, PointAssignment, Poly};
use triharm_core::derivation::RewriteSystem;
use triharm_core::expr::parse_equation;
use triharm_core::geometry::{
    bitension_components, koszul_connection, specialize_k2_zero, tritension_components,
    CurvatureComponents, FrameAlgebra, PullbackCalculus,
};
use triharm_core::proof::{
    builtin_biharmonic_script, builtin_triharmonic_script, numeric_cross_check, replay_script,
    Comparison, Report,
};
use triharm_core::reference::{lookup, DISPLAYS};
use triharm_core::verify::{verify_connection, verify_curvature};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn display(id: &str) -> Poly {
    lookup(id).expect("known display").poly()
}

fn tri_report() -> Report {
    replay_script(&builtin_triharmonic_script(), &RewriteSystem::omega())
}

fn connection_table() -> Check {
    let out = run_command(&["verify", "connection"]);
    ensure!(out.code == EXIT_OK, "exit {}:\n{}", out.code, out.stdout);
    let bad: Vec<_> = verify_connection().into_iter().filter(|c| !c.ok).collect();
    ensure!(bad.is_empty(), "{} mismatches, first {}", bad.len(), bad[0].label);
    ensure!(out.stdout.contains("nabla_e1 e1 = -f1*e2"), "missing e1 e1 entry");
    ensure!(out.stdout.contains("nabla_e3 e3 = k1*e1 + k2*e2"), "missing e3 e3 entry");
    Ok(())
}

/// Orthonormal frame of a Bianchi-type Lie algebra, `[e_i, e_j] = eps_ijk n_k e_k + a_i e_j - a_j e_i`.
fn lie_algebra(n: [i64; 3], a: i64) -> FrameAlgebra {
    let av = [a, 0, 0];
    FrameAlgebra::from_upper(|i, j, k| {
        let (i, j, k) = (i.idx(), j.idx(), k.idx());
        let eps = match (i, j, k) {
            (0, 1, 2) | (1, 2, 0) => 1,
            (0, 2, 1) => -1,
            _ => 0,
        };
        let mut v = eps * n[k];
        if j == k {
            v += av[i];
        }
        if i == k {
            v -= av[j];
        }
        Poly::int(v)
    })
}

fn curvature() -> Check {
    let out = run_command(&["verify", "curvature"]);
    ensure!(out.code == EXIT_OK, "exit {}:\n{}", out.code, out.stdout);
    let checks = verify_curvature();
    ensure!(checks.len() == 7 && checks.iter().all(|c| c.ok), "component mismatch");
    let r1212 = checks.iter().find(|c| c.indices == [1, 2, 1, 2]).unwrap();
    let expected = parse_equation("-(e2(f1) - e1(f2) + f1^2 + f2^2 + 3*sigma^2)")
        .unwrap()
        .to_poly(&RewriteSystem::generic());
    ensure!(r1212.computed == expected, "R_1212 = {}", r1212.computed);
    ensure!(r1212.comparison == Comparison::ExactMatch, "R_1212 {}", r1212.comparison);

    let generic = RewriteSystem::generic();
    let fa = FrameAlgebra::default();
    let v = CurvatureComponents::compute(&koszul_connection(&fa), &fa, &generic).symmetry_violations();
    ensure!(v.is_empty(), "default frame: {}", v[0]);
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let mut n = [0i64; 3].map(|_| rng.gen_range(-4..=4));
        let a = if rng.gen_bool(0.5) {
            n[0] = 0;
            rng.gen_range(-3..=3)
        } else {
            0
        };
        let fa = lie_algebra(n, a);
        let v = CurvatureComponents::compute(&koszul_connection(&fa), &fa, &generic).symmetry_violations();
        ensure!(v.is_empty(), "algebra n={n:?} a={a}: {}", v[0]);
    }
    Ok(())
}

fn tritension_system() -> Check {
    let (t1, t2) = tritension_components(&RewriteSystem::generic());
    ensure!((&t1 - &display("sys.tritension.1")).is_zero(), "first component differs");
    ensure!((&t2 - &display("sys.tritension.2")).is_zero(), "second component differs");
    let harmonic = RewriteSystem::generic().with_vanishing([Base::K1, Base::K2]);
    ensure!(harmonic.normalize(&t1).is_zero() && harmonic.normalize(&t2).is_zero(), "harmonic case");
    Ok(())
}

fn k2_zero_specialization() -> Check {
    let generic = RewriteSystem::generic();
    let pc = PullbackCalculus::new(&generic);
    let ab = specialize_k2_zero(&pc.rough_laplacian(&pc.tension_field()).into_pair());
    ensure!(ab == (display("red.a_prime"), display("red.b_prime")), "A', B' differ");
    let a_prime = parse_equation("-L(k1) + k1*f1^2 + k1*f2^2").unwrap();
    ensure!(ab.0 == a_prime.to_poly(&generic.with_vanishing([Base::K2])), "A' text");
    let tri = specialize_k2_zero(&tritension_components(&generic));
    ensure!(tri == (display("red.tritension.1"), display("red.tritension.2")), "tritension k2 = 0");
    let bi = bitension_components(&generic);
    ensure!(bi == (display("red.bitension.1"), display("red.bitension.2")), "bitension pair");
    Ok(())
}

fn chain_fidelity() -> Check {
    let report = tri_report();
    let quintic = &report.outcomes[0].result;
    let (tri1, _) = tritension_components(&RewriteSystem::omega());
    ensure!(
        triharm_core::proof::compare_up_to_scalar(&tri1, &display("tri.quintic")).is_match(),
        "omega tritension is not a multiple of the quintic"
    );
    let m = |fs: &[(Base, u32)]| Monomial::from_factors(fs.iter().map(|&(b, e)| (DerivedSymbol::base(b), e)));
    let (k1, f2, s) = (Base::K1, Base::F2, Base::Sigma);
    let basis = [
        m(&[(k1, 5)]),
        m(&[(f2, 1), (k1, 4)]),
        m(&[(s, 2), (k1, 3)]),
        m(&[(f2, 2), (k1, 3)]),
        m(&[(s, 2), (f2, 1), (k1, 2)]),
        m(&[(s, 4), (k1, 1)]),
    ];
    let coeffs: Vec<_> = basis.iter().map(|b| quintic.coefficient(b)).collect();
    ensure!(coeffs == [-9, 19, 164, -9, -120, -32].map(int), "coefficients {coeffs:?}");
    ensure!(quintic.len() == 6, "extra terms in {quintic}");
    let ids = [
        "tri.quartic",
        "tri.quartic_e1",
        "tri.cubic_combo",
        "tri.cubic_combo_e1",
        "tri.quadratic_combo",
        "tri.quadratic_combo_2",
        "tri.curvature_square",
    ];
    for id in ids {
        let step = report.steps.iter().find(|s| s.paper_eq.as_deref() == Some(id));
        let step = step.ok_or_else(|| format!("{id} is never compared"))?;
        ensure!(
            step.comparison == "ExactMatch" || step.comparison == "ScalarMatch",
            "{id}: {}",
            step.comparison
        );
    }
    let mismatches = report.steps.iter().filter(|s| s.comparison == "Mismatch").count();
    ensure!(mismatches == 0, "{mismatches} mismatches");
    ensure!(report.flags.iter().all(|f| f.contains("misprint")), "unexpected flags {:?}", report.flags);
    Ok(())
}

fn verdicts() -> Check {
    let tri = run_command(&["replay", "tri"]);
    ensure!(tri.code == EXIT_OK, "replay tri exit {}", tri.code);
    let report = tri_report();
    let stmts: Vec<&str> = report.conclusions.iter().map(|c| c.statement.as_str()).collect();
    ensure!(
        stmts == ["sigma = 0 on Omega", "f2 = 0 on Omega", "c = 0 on Omega", "contradiction: k1 vanishes on Omega"],
        "tri conclusions {stmts:?}"
    );
    ensure!(report.steps.iter().any(|s| s.paper_eq.as_deref() == Some("tri.k1_fifth")), "k1^5 step");
    ensure!(tri.stdout.contains("contradiction: k1 vanishes"), "text report lacks the contradiction");

    let bi = run_command(&["replay", "bi"]);
    ensure!(bi.code == EXIT_OK, "replay bi exit {}", bi.code);
    let report = replay_script(&builtin_biharmonic_script(), &RewriteSystem::omega());
    let stmts: Vec<&str> = report.conclusions.iter().map(|c| c.statement.as_str()).collect();
    ensure!(
        stmts == ["sigma = 0 on Omega", "c = 0 on Omega", "contradiction: k1 vanishes on Omega"],
        "bi conclusions {stmts:?}"
    );
    for id in ["bi.quadric", "bi.k1_squared"] {
        let step = report.steps.iter().find(|s| s.paper_eq.as_deref() == Some(id)).ok_or(id)?;
        ensure!(step.comparison != "Mismatch", "{id} mismatched");
    }
    Ok(())
}

fn oracle() -> Check {
    let omega = RewriteSystem::omega();
    let generic = RewriteSystem::generic();
    let k1 = Poly::base(Base::K1);
    let s = Poly::base(Base::Sigma);
    let rel = &s * &s - &k1 * &Poly::base(Base::F2);
    let mut identities = vec![
        ("e1(sigma^2 - k1*f2)".to_string(), omega.derive(&rel, Frame::E1), omega.clone()),
        ("k1*P12 - P11".to_string(), &k1 * &display("tri.quartic") - display("tri.quintic"), omega.clone()),
        (
            "2*P12 - P13 - P14".to_string(),
            display("tri.quartic").scale(&int(2)) - display("tri.quartic_e1") - display("tri.cubic_combo"),
            omega.clone(),
        ),
        (
            "P15 - P14 + 2*P16".to_string(),
            display("tri.cubic_combo_e1") - display("tri.cubic_combo") + display("tri.quadratic_combo").scale(&int(2)),
            omega.clone(),
        ),
        (
            "tritension - system".to_string(),
            tritension_components(&generic).1 - display("sys.tritension.2"),
            generic.clone(),
        ),
    ];
    for (i, d) in DISPLAYS.iter().enumerate() {
        if d.id.starts_with("omega.") {
            identities.push((format!("display {i}"), d.poly(), omega.clone()));
        }
    }
    let report = tri_report();
    for (step, out) in builtin_triharmonic_script().steps.iter().zip(&report.outcomes) {
        if let triharm_core::proof::StepKind::ApplyE1(i) = step.kind {
            let p = &out.result - &omega.derive(&report.outcomes[i].result, Frame::E1);
            identities.push((format!("ApplyE1 step {i}"), p, omega.clone()));
        }
    }
    for (name, p, rs) in identities {
        let r = numeric_cross_check(&p, &rs, 100);
        ensure!(r.passed && r.samples >= 100, "{name}: witness {:?}", r.witness);
    }
    let w = numeric_cross_check(&k1, &omega, 100);
    ensure!(!w.passed, "k1 passed the oracle");
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng, pool: &[DerivedSymbol]) -> Poly {
    let terms = rng.gen_range(0..=4);
    Poly::from_terms((0..terms).map(|_| {
        let factors = rng.gen_range(0..=3);
        let m = Monomial::from_factors(
            (0..factors).map(|_| (pool[rng.gen_range(0..pool.len())].clone(), rng.gen_range(1..=3))),
        );
        (m, rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
    }))
}

fn generic_pool() -> Vec<DerivedSymbol> {
    let generic = RewriteSystem::generic();
    let mut pool = Vec::new();
    for b in Base::ALL {
        let mut words = vec![vec![]];
        for i in Frame::ALL {
            words.push(vec![i]);
            for j in Frame::ALL.into_iter().filter(|&j| j >= i) {
                words.push(vec![i, j]);
            }
        }
        for w in words {
            if let Ok(s) = DerivedSymbol::new(b, w) {
                let p = Poly::symbol(s.clone());
                if generic.normalize(&p) == p {
                    pool.push(s);
                }
            }
        }
    }
    pool
}

fn property_suites() -> Check {
    let pool = generic_pool();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let modes = [RewriteSystem::generic(), RewriteSystem::omega()];
    for n in 0..100 {
        let p = random_poly(&mut rng, &pool);
        let q = random_poly(&mut rng, &pool);
        for rs in &modes {
            let (np, nq) = (rs.normalize(&p), rs.normalize(&q));
            for i in Frame::ALL {
                let lhs = rs.derive(&(&p * &q), i);
                let rhs = &rs.derive(&p, i) * &nq + &np * &rs.derive(&q, i);
                ensure!(lhs == rhs, "Leibniz pair {n}, e{} in {rs}", i.number());
            }
            let d = |x: &Poly, i: Frame| rs.derive(x, i);
            let comm = |i: Frame, j: Frame| d(&d(&p, j), i) - d(&d(&p, i), j);
            let (e1, e2, e3) = (Frame::E1, Frame::E2, Frame::E3);
            let k = |b: Base| Poly::base(b);
            ensure!(comm(e1, e3) == rs.normalize(&(k(Base::K1) * d(&p, e3))), "[e1,e3] case {n} in {rs}");
            ensure!(comm(e2, e3) == rs.normalize(&(k(Base::K2) * d(&p, e3))), "[e2,e3] case {n} in {rs}");
            let e12 = k(Base::F1) * d(&p, e1) + k(Base::F2) * d(&p, e2) - (k(Base::Sigma) * d(&p, e3)).scale(&int(2));
            ensure!(comm(e1, e2) == rs.normalize(&e12), "[e1,e2] case {n} in {rs}");
        }
        let r = random_poly(&mut rng, &pool);
        ensure!(&(&p * &q) * &r == &p * &(&q * &r), "associativity {n}");
        ensure!(&p * &q == &q * &p && &p + &q == &q + &p, "commutativity {n}");
        ensure!(&p * &(&q + &r) == &(&p * &q) + &(&p * &r), "distributivity {n}");

        let mut at = PointAssignment::new();
        for s in &pool {
            at.set(s.clone(), rat(rng.gen_range(-20..=20), rng.gen_range(1..=9)));
        }
        let ev = |x: &Poly| evaluate(x, &at, &modes[0]).map_err(|e| e.to_string());
        ensure!(ev(&(&p * &q))? == ev(&p)? * ev(&q)?, "product homomorphism {n}");
        ensure!(ev(&(&p + &q))? == ev(&p)? + ev(&q)?, "sum homomorphism {n}");
    }
    for d in DISPLAYS {
        let eq = d.equation().map_err(|e| format!("{}: {e}", d.id))?;
        let back = parse_equation(&eq.to_string()).map_err(|e| format!("{}: {e}", d.id))?;
        ensure!(back == eq, "{} does not round-trip", d.id);
    }
    Ok(())
}

fn determinism() -> Check {
    let dir = std::env::temp_dir();
    let pid = std::process::id();
    let paths = [dir.join(format!("triharm-a-{pid}.json")), dir.join(format!("triharm-b-{pid}.json"))];
    for p in &paths {
        let out = run_command(&["replay", "tri", "--json", p.to_str().unwrap()]);
        ensure!(out.code == EXIT_OK, "replay exit {}", out.code);
    }
    let a = std::fs::read(&paths[0]).map_err(|e| e.to_string())?;
    let b = std::fs::read(&paths[1]).map_err(|e| e.to_string())?;
    for p in &paths {
        let _ = std::fs::remove_file(p);
    }
    ensure!(!a.is_empty() && a == b, "reports differ");
    let s1 = run_command(&["replay", "tri", "--json"]).stdout;
    let s2 = run_command(&["replay", "tri", "--json"]).stdout;
    ensure!(s1 == s2 && s1.as_bytes() == a.as_slice(), "stdout reports differ");
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("connection table", connection_table),
        ("curvature components and symmetries", curvature),
        ("tritension system", tritension_system),
        ("k2 = 0 specialization", k2_zero_specialization),
        ("chain fidelity", chain_fidelity),
        ("verdicts", verdicts),
        ("numeric oracle", oracle),
        ("property suites", property_suites),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {} {name}", n + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {} {name}: {e}", n + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
