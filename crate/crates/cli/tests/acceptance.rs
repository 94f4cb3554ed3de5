//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic throughout.
//!
//! Runs without the libtest harness so the lines always reach stdout.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use filiform_core::algebra::{
    core_ideal, inn_subalgebra, is_bracket_automorphism, lower_central_series, phi_automorphism, AlgebraElement,
};
use filiform_core::group::GroupElement;
use filiform_core::loops::{spec_from_comm_matrix, CommMatrix, LoopPoint, LoopSpec};
use filiform_core::mult::{self, AnalysisOptions, MIN_COMMUTATOR_PAIRS};
use filiform_core::sample::{random_nonzero_rational, random_poly_vanishing_at_zero, random_rational, random_vector};
use filiform_core::{Poly, RatMatrix, Rational};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_element(rng: &mut StdRng, n: usize) -> GroupElement {
    GroupElement::new(
        random_rational(rng, 9, 5),
        random_vector(rng, n, 9, 5),
        random_rational(rng, 9, 5),
    )
    .unwrap()
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(1);
    for n in 1..=5 {
        for _ in 0..100 {
            let (g, h) = (random_element(&mut rng, n), random_element(&mut rng, n));
            let via_matrix = g.mul(&h).map_err(|e| e.to_string())?;
            let via_params = g.mul_parametric(&h).map_err(|e| e.to_string())?;
            ensure(via_matrix == via_params, || format!("n={n}: products differ for {g:?}, {h:?}"))?;
        }
        for _ in 0..100 {
            let (a, b, c) = (
                random_element(&mut rng, n),
                random_element(&mut rng, n),
                random_element(&mut rng, n),
            );
            let left = a.mul(&b).and_then(|ab| ab.mul(&c)).map_err(|e| e.to_string())?;
            let right = b.mul(&c).and_then(|bc| a.mul(&bc)).map_err(|e| e.to_string())?;
            ensure(left == right, || format!("n={n}: associativity fails"))?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("500 product pairs and 500 triples agree exactly ({took:.2?})"))
}

fn criterion_2() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    for n in 1..=6 {
        let dim = n + 2;
        let e = |i| AlgebraElement::basis(n, i);
        let br = |x: &AlgebraElement, y: &AlgebraElement| x.bracket(y).unwrap();
        for i in 1..=dim {
            for j in 1..=dim {
                ensure(br(&e(i), &e(j)).add(&br(&e(j), &e(i))).unwrap().is_zero(), || {
                    format!("n={n}: antisymmetry fails on e{i}, e{j}")
                })?;
                for k in 1..=dim {
                    let jac = br(&e(i), &br(&e(j), &e(k)))
                        .add(&br(&e(j), &br(&e(k), &e(i))))
                        .unwrap()
                        .add(&br(&e(k), &br(&e(i), &e(j))))
                        .unwrap();
                    ensure(jac.is_zero(), || format!("n={n}: Jacobi fails on e{i}, e{j}, e{k}"))?;
                }
            }
        }
        for _ in 0..20 {
            let x = AlgebraElement::new(n, random_vector(&mut rng, dim, 7, 4)).unwrap();
            let y = AlgebraElement::new(n, random_vector(&mut rng, dim, 7, 4)).unwrap();
            let z = AlgebraElement::new(n, random_vector(&mut rng, dim, 7, 4)).unwrap();
            let (s, t) = (random_rational(&mut rng, 7, 4), random_rational(&mut rng, 7, 4));
            let combo = x.scale(&s).add(&y.scale(&t)).unwrap();
            let expected = br(&x, &z).scale(&s).add(&br(&y, &z).scale(&t)).unwrap();
            ensure(br(&combo, &z) == expected, || format!("n={n}: bilinearity fails"))?;
        }
        let dims: Vec<usize> = lower_central_series(n).unwrap().iter().map(|s| s.dim()).collect();
        let mut expected = vec![n + 2];
        expected.extend((0..=n).rev());
        ensure(dims == expected, || format!("n={n}: lower central series {dims:?}, expected {expected:?}"))?;
    }
    Ok("n = 1..6: brackets antisymmetric, bilinear, Jacobi; series dims n+2, n, ..., 1, 0".into())
}

fn random_proper_spec(rng: &mut StdRng) -> LoopSpec {
    loop {
        let n = rng.gen_range(1..=4);
        let v = (0..n)
            .map(|i| {
                let deg = if i + 1 == n { rng.gen_range(2..=4) } else { rng.gen_range(1..=4) };
                random_poly_vanishing_at_zero(rng, deg)
            })
            .collect();
        let spec = LoopSpec::new(v).unwrap();
        if spec.is_proper() {
            return spec;
        }
    }
}

fn criterion_3() -> Check {
    let mut rng = StdRng::seed_from_u64(3);
    let e = LoopPoint::identity();
    for s in 0..10 {
        let spec = random_proper_spec(&mut rng);
        for _ in 0..50 {
            let a = LoopPoint::new(random_rational(&mut rng, 9, 4), random_rational(&mut rng, 9, 4));
            let b = LoopPoint::new(random_rational(&mut rng, 9, 4), random_rational(&mut rng, 9, 4));
            ensure(spec.lmul(&e, &a) == a && spec.lmul(&a, &e) == a, || format!("spec {s}: identity fails at {a}"))?;
            let y = spec.ldiv(&a, &b);
            ensure(spec.lmul(&a, &y) == b, || format!("spec {s}: left division fails for {a}, {b}"))?;
            let x = spec.rdiv(&b, &a);
            ensure(spec.lmul(&x, &a) == b, || format!("spec {s}: right division fails for {a}, {b}"))?;
            let via_group = spec.coset_action(&a, &b).map_err(|e| e.to_string())?;
            ensure(via_group == spec.lmul(&a, &b), || format!("spec {s}: coset action differs for {a}, {b}"))?;
        }
    }
    Ok("10 proper specs x 50 pairs: identity, divisions, coset action exact".into())
}

fn criterion_4() -> Check {
    let commutative = LoopSpec::from_ints(&[&[0, 0, 1], &[0, -1, 1]]).unwrap();
    let sol = mult::solve_companions(&commutative).ok_or("no companions for (x^2, -x + x^2)")?;
    ensure(sol.s == vec![Poly::zero(), Poly::zero()], || format!("companions {:?}", sol.s))?;
    ensure(commutative.comm_defect().is_zero(), || "comm_defect is not zero".into())?;
    ensure(commutative.is_proper(), || "(x^2, -x + x^2) not proper".into())?;
    let square = LoopSpec::from_ints(&[&[0, 0, 1]]).unwrap();
    ensure(mult::solve_companions(&square).is_none(), || "x^2 at n = 1 has companions".into())?;
    Ok("(x^2, -x + x^2): s = (0, 0), commutative, proper; x^2: no solution".into())
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let profiles: [&[i64]; 4] = [&[0, 0, 1], &[0, 0, 0, 1], &[0, 0, -1, 1], &[0, 0, 1, 0, 1]];
    let mut dims = Vec::new();
    for c in profiles {
        let v1 = Poly::from_ints(c);
        let deg = v1.degree().unwrap();
        let report = mult::thm3_pipeline(&v1, &AnalysisOptions::default()).map_err(|e| e.to_string())?;
        ensure(report.all_pass(), || format!("{v1}: {:?}", report.certificates))?;
        ensure(report.mult_dimension == Some(deg + 2), || format!("{v1}: dimension {:?}", report.mult_dimension))?;
        ensure(report.claim == format!("Mult(L) is isomorphic to F_{}", deg + 2), || report.claim.clone())?;
        let pairs = report
            .certificate("h_connected")
            .and_then(|c| c.witness.as_ref())
            .and_then(|w| w["pairs_checked"].as_u64())
            .unwrap_or(0) as usize;
        ensure(pairs >= MIN_COMMUTATOR_PAIRS, || format!("{v1}: only {pairs} pairs"))?;
        for name in ["full_generation", "degenerate_transversal_rejected"] {
            ensure(report.certificate(name).is_some_and(|c| c.pass), || format!("{v1}: {name} missing"))?;
        }
        dims.push(format!("F_{}", deg + 2));
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(30), || format!("took {took:?}"))?;
    Ok(format!("u^2, u^3, u^3 - u^2, u^4 + u^2 -> {} ({took:.2?})", dims.join(", ")))
}

fn criterion_6() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    for i in 0..20 {
        let n = 1 + i % 5;
        let a = random_vector(&mut rng, n, 9, 5);
        let phi = phi_automorphism(&a).map_err(|e| e.to_string())?;
        ensure(is_bracket_automorphism(&phi), || format!("a = {a:?}: not an automorphism"))?;
        ensure(mult::inn_correspondence_check(&a).map_err(|e| e.to_string())?, || {
            format!("a = {a:?}: image is not <e_2, ..., e_{}>", n + 1)
        })?;
        let inn = inn_subalgebra(&a).map_err(|e| e.to_string())?;
        ensure(core_ideal(&inn).map_err(|e| e.to_string())?.is_zero(), || format!("a = {a:?}: core nonzero"))?;
    }
    Ok("20 parameter vectors: automorphism, correspondence, trivial core".into())
}

#[allow(clippy::needless_range_loop)]
fn random_signed_symmetric(rng: &mut StdRng, n: usize) -> Vec<Vec<Rational>> {
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = random_rational(rng, 9, 4);
            rows[j][i] = Rational::sign_power(i + j) * &x;
            rows[i][j] = x;
        }
    }
    rows
}

fn criterion_7() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    for k in 0..20 {
        let n = 1 + k % 4;
        let m = CommMatrix::new(RatMatrix::from_rows(random_signed_symmetric(&mut rng, n)).unwrap()).unwrap();
        let spec = spec_from_comm_matrix(&m).map_err(|e| e.to_string())?;
        ensure(spec.comm_defect().is_zero(), || format!("matrix {k}: comm_defect nonzero"))?;
        let sol = mult::solve_companions(&spec).ok_or_else(|| format!("matrix {k}: no companions"))?;
        ensure(sol.is_zero(), || format!("matrix {k}: companions {:?}", sol.s))?;
    }
    for k in 0..20 {
        let n = 2 + k % 3;
        let mut rows = random_signed_symmetric(&mut rng, n);
        let i = rng.gen_range(0..n - 1);
        let j = rng.gen_range(i + 1..n);
        rows[i][j] = &rows[i][j] + random_nonzero_rational(&mut rng, 9, 4);
        let m = CommMatrix::new(RatMatrix::from_rows(rows).unwrap()).unwrap();
        ensure(!m.is_signed_symmetric(), || format!("perturbed matrix {k} still signed symmetric"))?;
        ensure(!m.to_spec_unchecked().comm_defect().is_zero(), || format!("perturbed matrix {k}: comm_defect zero"))?;
    }
    Ok("20 signed-symmetric matrices commutative with zero companions; 20 perturbed ones not".into())
}

fn specs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn run_cli(args: &[String]) -> Result<(Vec<u8>, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_filiform"))
        .args(args)
        .env_remove("FILIFORM_PRETTY")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code().unwrap_or(-1)))
}

fn criterion_8() -> Check {
    let spec = |name: &str| specs_dir().join(name).display().to_string();
    let cases: Vec<(Vec<String>, i32)> = vec![
        (vec!["validate".into(), spec("f3_square.json")], 0),
        (vec!["validate".into(), spec("f4_commutative.json")], 0),
        (vec!["validate".into(), spec("f3_linear.json")], 1),
        (vec!["validate".into(), spec("f3_bad_identity.json")], 2),
        (
            ["mul", &spec("f3_square.json"), "--a", "1,0", "--b", "1,0"].map(String::from).to_vec(),
            0,
        ),
        (
            ["div", &spec("f4_noncommutative.json"), "--a", "1/2,3", "--b", "-2,1", "--side", "right"]
                .map(String::from)
                .to_vec(),
            0,
        ),
        (vec!["comm".into(), spec("f4_commutative.json")], 0),
        (vec!["comm".into(), spec("f4_noncommutative.json")], 0),
        (vec!["mult-group".into(), spec("f4_commutative.json")], 0),
        (vec!["mult-group".into(), spec("f3_square.json")], 0),
        (vec!["thm3".into(), spec("f3_square.json")], 0),
        (vec!["thm3".into(), spec("f3_cubic.json"), "--grid".into(), "-1,1,2,3,4:0,1".into()], 0),
        (vec!["thm3".into(), spec("f3_linear.json")], 2),
        (["algebra-bracket", "--n", "3", "--x", "1,0,0,0,0", "--y", "0,1,1/2,0,0"].map(String::from).to_vec(), 0),
        (
            ["classify-subalgebra", "--n", "3", "--vec", "1,1,0,0,0", "--vec", "0,0,0,1,0", "--vec", "0,0,0,0,1"]
                .map(String::from)
                .to_vec(),
            0,
        ),
        (["core-ideal", "--n", "3", "--vec", "1,0,0,0,0", "--vec", "0,0,0,1,0", "--vec", "0,0,0,0,1"].map(String::from).to_vec(), 0),
        (["inn-check", "--a", "1,2"].map(String::from).to_vec(), 0),
        (["mul", "--a", "1"].map(String::from).to_vec(), 2),
    ];
    for (args, code) in &cases {
        let (first, c1) = run_cli(args)?;
        let (second, c2) = run_cli(args)?;
        ensure(first == second, || format!("{args:?}: outputs differ between runs"))?;
        ensure(c1 == *code && c2 == *code, || format!("{args:?}: exit {c1}/{c2}, expected {code}"))?;
    }

    // a left quotient of a product recovers the right factor
    let (mul_out, _) = run_cli(&["mul", &spec("f4_noncommutative.json"), "--a", "2,1", "--b", "-1/3,5"].map(String::from))?;
    let product: serde_json::Value = serde_json::from_slice(&mul_out).map_err(|e| e.to_string())?;
    let r = &product["result"];
    let point = format!("{},{}", r["u"].as_str().unwrap_or(""), r["z"].as_str().unwrap_or(""));
    let (div_out, code) = run_cli(&["div", &spec("f4_noncommutative.json"), "--a", "2,1", "--b", &point].map(String::from))?;
    let quotient: serde_json::Value = serde_json::from_slice(&div_out).map_err(|e| e.to_string())?;
    ensure(code == 0 && quotient["result"] == serde_json::json!({"u": "-1/3", "z": "5"}), || {
        format!("div of mul result gave {}", quotient["result"])
    })?;
    Ok(format!("{} invocations byte-identical with documented exit codes; mul/div round-trip", cases.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("matrix-oracle equivalence", criterion_1),
        ("Lie algebra suite", criterion_2),
        ("loop axiom suite", criterion_3),
        ("commutativity via companions", criterion_4),
        ("F_3-loop multiplication groups", criterion_5),
        ("inner mapping algebra structure", criterion_6),
        ("commutativity criterion", criterion_7),
        ("CLI determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
