//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;

use kmalg::cartan::{
    builtin_families, classify, identify_2x2, realization_dims, CartanKind, GeneralizedCartanMatrix,
};
use kmalg::findim::{make_abelian, make_sl, make_su, BaseField, FiniteLieAlgebra};
use kmalg::involution::Kind;
use kmalg::involution::{TruncSubspace, Truncation};
use kmalg::io::named_km;
use kmalg::kmext::{jacobi_suite, splitting_hom, ExtendedElement, KmAlgebra};
use kmalg::linalg::CMatrix;
use kmalg::loops::{real_loop_basis, Definiteness, LoopAlgebra, LoopElement};
use kmalg::osaka::{
    build_catalog_a1, complex_counterexample, duality_pairing, effectiveness_check,
    first_kind_example, involution_counts, verify_all, Effectiveness, OsakaRecord,
};
use kmalg::random::{random_loop, trial_rng, Reality};
use kmalg::scalar::Scalar;

type Outcome = (bool, String);

fn c1_cartan_tables() -> Outcome {
    let start = Instant::now();
    let expected = [
        ("a₁×a₁", [[2, 0], [0, 2]], CartanKind::Finite, Some(6)),
        ("a₂", [[2, -1], [-1, 2]], CartanKind::Finite, Some(8)),
        ("b₂", [[2, -1], [-2, 2]], CartanKind::Finite, Some(10)),
        ("g₂", [[2, -1], [-3, 2]], CartanKind::Finite, Some(14)),
        ("ã₁", [[2, -2], [-2, 2]], CartanKind::Affine, None),
        ("ã₁′", [[2, -1], [-4, 2]], CartanKind::Affine, None),
    ];
    let mut ok = builtin_families().len() == 6;
    for (name, m, kind, dim) in expected {
        let a = GeneralizedCartanMatrix::validate(m.iter().map(|r| r.to_vec()).collect()).unwrap();
        let fam = identify_2x2(&a).unwrap();
        ok &= classify(&a).kind == kind;
        ok &= fam.as_ref().map(|f| (f.name.as_str(), f.dim)) == Some((name, dim));
    }
    let ms = start.elapsed().as_millis();
    (
        ok && ms < 1000,
        format!("4 finite + 2 affine rank-two matrices, {ms} ms"),
    )
}

fn cyclic_affine(n: usize) -> Vec<Vec<i64>> {
    if n == 2 {
        return vec![vec![2, -2], vec![-2, 2]];
    }
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        2
                    } else if (i + 1) % n == j || (j + 1) % n == i {
                        -1
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect()
}

fn c2_realization() -> Outcome {
    let mut got = Vec::new();
    let mut ok = true;
    for n in 2..=6 {
        let a = GeneralizedCartanMatrix::validate(cyclic_affine(n)).unwrap();
        ok &= classify(&a).kind == CartanKind::Affine;
        let d = realization_dims(&a);
        ok &= d.dim_h == n + 1;
        got.push(d.dim_h);
    }
    (ok, format!("dim h for n = 2..6: {got:?}"))
}

fn c3_jacobi() -> Outcome {
    let start = Instant::now();
    let mut failures = 0;
    let mut total = 0;
    for (i, (alg, twist)) in [("su2", 1), ("su2", 2), ("sl2", 1), ("sl2", 2)]
        .into_iter()
        .enumerate()
    {
        let km = named_km(alg, twist).unwrap();
        let rep = jacobi_suite(&km, 250, 6, 1000 + i as u64);
        failures += rep.failures.len();
        total += rep.trials;
    }
    let secs = start.elapsed().as_secs_f64();
    (
        failures == 0 && total == 1000 && secs < 30.0,
        format!("{total} triples, {failures} nonzero residuals, {secs:.2} s"),
    )
}

/// `B(X, Y) = 4 tr(XY)` on `sl(2, C)`.
fn killing_sl2(x: &CMatrix, y: &CMatrix) -> Scalar {
    x.mul_mat(y).trace().scale(&kmalg::scalar::rat(4, 1))
}

fn c4_cocycle() -> Outcome {
    let mut bad_anti = 0;
    let mut bad_cocycle = 0;
    for t in 0..500u64 {
        let km = named_km(
            if t % 2 == 0 { "su2" } else { "sl2" },
            1 + (t % 4 >= 2) as u32,
        )
        .unwrap();
        let la = km.loops();
        let mut rng = trial_rng(44, t);
        let f = random_loop(la, &mut rng, 4, Reality::Complex);
        let g = random_loop(la, &mut rng, 4, Reality::Complex);
        let h = random_loop(la, &mut rng, 4, Reality::Complex);
        let w = |a: &LoopElement, b: &LoopElement| km.cocycle(a, b).unwrap();
        if w(&f, &g) != -w(&g, &f) {
            bad_anti += 1;
        }
        let br = |a: &LoopElement, b: &LoopElement| la.bracket(a, b).unwrap();
        let s = &(&w(&br(&f, &g), &h) + &w(&br(&g, &h), &f)) + &w(&br(&h, &f), &g);
        if !s.is_zero() {
            bad_cocycle += 1;
        }
    }
    let mut bad_residue = 0;
    for t in 0..500u64 {
        let km = named_km(if t % 2 == 0 { "su2" } else { "sl2" }, 1).unwrap();
        let g = km.finite();
        let mut rng = trial_rng(45, t);
        let f = random_loop(km.loops(), &mut rng, 4, Reality::Complex);
        let h = random_loop(km.loops(), &mut rng, 4, Reality::Complex);
        let r = km.residue_cocycle(&f, &h).unwrap();
        // residue Σ (−k)·B(a_k, b_{−k}) straight from the matrices
        let mut oracle = Scalar::zero();
        for (k, a) in f.terms() {
            let b = h.coefficient(-k);
            oracle += &killing_sl2(&g.element(a), &g.element(&b)).scale(&kmalg::scalar::rat(-k, 1));
        }
        if r.residue != oracle
            || r.integral != oracle.mul_i()
            || km.cocycle(&f, &h).unwrap() != r.integral
        {
            bad_residue += 1;
        }
    }
    let ok = bad_anti == 0 && bad_cocycle == 0 && bad_residue == 0;
    (ok, format!("antisymmetry {bad_anti}/500, cocycle identity {bad_cocycle}/500, integral = i·residue {bad_residue}/500 failures"))
}

fn c5_killing() -> Outcome {
    let start = Instant::now();
    let verdict = |g: &FiniteLieAlgebra, n: i64| {
        let (la, basis) = real_loop_basis(g, n).unwrap();
        let r = la.killing_gram(&basis).unwrap();
        (basis.len(), r.verdict)
    };
    let (d_su, v_su) = verdict(&make_su(2).unwrap(), 4);
    let (_, v_ab) = verdict(&make_abelian(1, BaseField::Real), 4);
    let (_, v_sl) = verdict(&make_sl(2, BaseField::Real).unwrap(), 4);
    let ms = start.elapsed().as_millis();
    let ok = d_su == 27
        && v_su == Definiteness::NegDefinite
        && v_ab == Definiteness::Degenerate
        && v_sl == Definiteness::Indefinite
        && ms < 5000;
    (
        ok,
        format!(
            "L(su(2)) N=4 {d_su}-dim {}, abelian {}, L(sl(2,R)) {}, {ms} ms",
            v_su.as_str(),
            v_ab.as_str(),
            v_sl.as_str()
        ),
    )
}

fn type_three(cat: &[OsakaRecord]) -> Vec<&OsakaRecord> {
    cat.iter().filter(|r| r.name.starts_with("III-")).collect()
}

fn c6_sign_split(cat: &[OsakaRecord]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for r in type_three(cat) {
        let dec = r.decomposition(3).unwrap();
        let k = dec.k_loop_gram().unwrap().verdict;
        let p = dec.p_loop_gram().unwrap().verdict;
        ok &= k == Definiteness::NegDefinite && p == Definiteness::PosDefinite;
        detail.push(format!("{}: K {} P {}", r.name, k.as_str(), p.as_str()));
    }
    (ok && detail.len() == 3, detail.join("; "))
}

fn flat(m: &CMatrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

/// The stated membership conditions, written directly on coefficient matrices.
fn stated_conditions(
    form: &str,
    eigen: i8,
    t: &Truncation,
    b: usize,
    x: &ExtendedElement,
    g: &FiniteLieAlgebra,
) -> Vec<Scalar> {
    if b == 0 {
        let mut v = vec![&x.c + &x.c.conj(), &x.d + &x.d.conj()];
        if eigen == 1 {
            v.extend([x.c.clone(), x.d.clone()]);
        }
        return v;
    }
    let sign = Scalar::from_int(i64::from(eigen));
    let mut out = Vec::new();
    for k in t.indices(b) {
        let m = g.element(&x.loop_part.coefficient(k));
        let mm = g.element(&x.loop_part.coefficient(-k));
        match form {
            "III-[Id,Id]" => {
                out.extend(flat(&m.add_mat(&m.adjoint())));
                out.extend(flat(&m.add_mat(&mm.adjoint().scale(&sign))));
            }
            _ => {
                out.extend(flat(&m.sub_mat(&m.conj())));
                if form == "III-[Id,μ]" {
                    let im = m.scale(&Scalar::i_pow(k));
                    out.extend(flat(&im.add_mat(&im.adjoint())));
                }
                out.extend(flat(&m.add_mat(&mm.transpose().scale(&sign))));
            }
        }
    }
    out
}

fn c7_condition_match(cat: &[OsakaRecord]) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for r in type_three(cat) {
        let dec = r.decomposition(3).unwrap();
        let t = &dec.truncation;
        let g = r.km.finite();
        let solve = |eigen: i8| -> TruncSubspace {
            let f = |b: usize, x: &ExtendedElement| stated_conditions(&r.name, eigen, t, b, x, g);
            t.solve(&[], &[&f])
        };
        let k_ok = solve(1).same_as(&dec.k, t);
        let p_ok = solve(-1).same_as(&dec.p, t);
        ok &= k_ok && p_ok;
        detail.push(format!("{}: K {} P {}", r.name, k_ok, p_ok));
    }
    (ok && detail.len() == 3, detail.join("; "))
}

fn c8_catalog(cat: &[OsakaRecord]) -> Outcome {
    let start = Instant::now();
    let reports = verify_all(cat, 3);
    let failing: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.name.clone())
        .collect();
    let counter = verify_all(&[complex_counterexample()], 3).remove(0);
    let secs = start.elapsed().as_secs_f64();
    let ok = cat.len() == 8 && failing.is_empty() && !counter.checks.fix_compact && secs < 60.0;
    (
        ok,
        format!(
            "{} records, failing {failing:?}, counterexample check (c) {}, {secs:.2} s",
            cat.len(),
            if counter.checks.fix_compact {
                "passes"
            } else {
                "fails"
            }
        ),
    )
}

fn c9_duality(cat: &[OsakaRecord]) -> Outcome {
    let pairs = duality_pairing(cat, 3);
    let table = [
        ("I-[Id,Id]", "III-[Id,Id]"),
        ("I-[Id,μ]", "III-[Id,μ]"),
        ("I-[μ,μ]", "III-[μ,μ]"),
        ("II", "IV"),
    ];
    let partner = |n: &str| {
        pairs
            .iter()
            .find(|p| p.name == n)
            .and_then(|p| p.partner.clone())
    };
    let mut ok = pairs
        .iter()
        .all(|p| p.matches_declared && p.double_dual_identity && p.type_flips);
    for (a, b) in table {
        ok &= partner(a).as_deref() == Some(b) && partner(b).as_deref() == Some(a);
    }
    ok &= pairs
        .iter()
        .all(|p| p.partner.as_deref().and_then(partner).as_deref() == Some(p.name.as_str()));
    (
        ok,
        format!("{} records paired, I↔III and II↔IV", pairs.len()),
    )
}

fn c10_splitting() -> Outcome {
    let s = make_sl(2, BaseField::Complex).unwrap();
    let f = KmAlgebra::new(LoopAlgebra::untwisted(&s));
    let s2 = FiniteLieAlgebra::direct_sum(&s, &s).unwrap();
    let s3 = FiniteLieAlgebra::direct_sum(&s2, &s).unwrap();
    let mut ok = true;
    let mut kernels = Vec::new();
    for (n, target) in [(1, s.clone()), (2, s2), (3, s3)] {
        let t = KmAlgebra::new(LoopAlgebra::untwisted(&target));
        let rep = splitting_hom(&vec![f.clone(); n], &t, 2, 200, 10).unwrap();
        ok &= rep.kernel_dim == n - 1
            && rep.homomorphism_failures == 0
            && rep.trials == 200
            && rep.surjective;
        kernels.push(rep.kernel_dim);
    }
    (ok, format!("kernel dims {kernels:?}, 200 pairs each"))
}

fn c11_effectiveness(cat: &[OsakaRecord]) -> Outcome {
    let mut ok = true;
    for r in cat {
        let e = effectiveness_check(r);
        ok &= e.maps_c_to_minus_c
            && e.kind == Kind::SecondKind
            && e.verdict == Effectiveness::Effective
            && e.lemma_holds;
    }
    let synthetic = effectiveness_check(&first_kind_example());
    ok &= synthetic.verdict == Effectiveness::NotEffective;
    (
        ok,
        format!(
            "{} catalog involutions effective of second kind, ε=+1 example {:?}",
            cat.len(),
            synthetic.verdict
        ),
    )
}

fn c12_counts() -> Outcome {
    let t = involution_counts();
    let got: Vec<u32> = ["e₆⁽¹⁾", "e₇⁽¹⁾", "e₈⁽¹⁾", "f₄⁽¹⁾", "g₂⁽¹⁾"]
        .iter()
        .map(|f| t.lookup(f).unwrap_or(0))
        .collect();
    (
        got == [9, 10, 6, 6, 3] && t.lookup("a₂⁽¹⁾").is_err(),
        format!("{got:?}"),
    )
}

fn main() -> ExitCode {
    let cat = build_catalog_a1();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome + '_>)> = vec![
        ("Cartan tables", Box::new(c1_cartan_tables)),
        ("realization bookkeeping", Box::new(c2_realization)),
        ("Jacobi suite", Box::new(c3_jacobi)),
        ("cocycle identities", Box::new(c4_cocycle)),
        ("Killing signatures", Box::new(c5_killing)),
        ("K/P sign split", Box::new(|| c6_sign_split(&cat))),
        ("K/P condition match", Box::new(|| c7_condition_match(&cat))),
        ("OSAKA catalog", Box::new(|| c8_catalog(&cat))),
        ("duality", Box::new(|| c9_duality(&cat))),
        ("splitting homomorphism", Box::new(c10_splitting)),
        ("effectiveness lemma", Box::new(|| c11_effectiveness(&cat))),
        ("static metadata", Box::new(c12_counts)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (ok, detail) = run();
        failed += usize::from(!ok);
        println!(
            "criterion {:>2} {} {name}: {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
    }
    println!(
        "acceptance: {} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
