//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::path::PathBuf;
use std::time::Instant;

use bunchcheck::bimyb::{
    check_bimyb, check_even_tempered, check_polynomial_stability, check_prop4, check_remark4,
    check_remark5, check_remark6, commutator_algebra, mult_operators, BiMyb,
};
use bunchcheck::bunch::{
    check_compatible, check_gamma_homomorphism, check_myb, check_primed_lie_condition,
    make_gamma_bunch, tangent_bracket, MybAlgebra,
};
use bunchcheck::catalog::{
    assoc_instances, bimyb_polynomial_set, build, check_restriction, claims_matrix, diag,
    make_assoc_mat, make_example2, make_gl, make_sl2, make_so, make_witt, make_witt_shift,
    mat_element, myb_instances, polynomial_set, ClaimsConfig, Flag, ENTRIES,
};
use bunchcheck::cli::{execute, export_document, parse_input, resolve, to_json};
use bunchcheck::liecore::{
    check_antisymmetry, check_equal_operators, check_jacobi, op_polynomial, BracketMap,
    CheckReport, Element, LinearOperator, Window,
};
use bunchcheck::ratlin::{frac, rat, Rational};
use bunchcheck::rep::{
    check_corollary, check_faithful, check_family_closure, check_representation, diamond_product,
    BracketFamily,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;
use serde_json::Value;

type Outcome = Result<String, String>;

fn golden(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn lambdas() -> Vec<Rational> {
    vec![rat(0), rat(1), rat(2)]
}

fn require(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn holds(r: &CheckReport, context: &str) -> Result<(), String> {
    require(r.holds, || format!("{context}: {r}"))
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn structural_gates() -> Outcome {
    let w = make_witt(6).map_err(err)?;
    let cases: Vec<(&str, BracketMap)> = vec![
        ("so(3)", make_so(3).map_err(err)?),
        ("so(4)", make_so(4).map_err(err)?),
        ("sl(2)", make_sl2().map_err(err)?.algebra),
        ("mat(2)", make_gl(2).map_err(err)?),
        ("mat(3)", make_gl(3).map_err(err)?),
        ("witt [-6,6]", w),
    ];
    let mut tuples = 0;
    for (name, br) in &cases {
        for r in [
            check_antisymmetry(br, Window::Full).map_err(err)?,
            check_jacobi(br, Window::Full).map_err(err)?,
        ] {
            holds(&r, name)?;
            require(r.failures.is_empty(), || {
                format!("{name}: counterexamples recorded")
            })?;
            tuples += r.tuples_checked;
        }
    }
    Ok(format!(
        "{} algebras, {tuples} tuples, 0 counterexamples",
        cases.len()
    ))
}

fn witt_suite() -> Outcome {
    let g = golden("oracle_verdicts.json");
    let w = make_witt(8).map_err(err)?;
    let window = Window::Symmetric(8);
    let mut notes = Vec::new();
    for n in 1..=3 {
        let want = &g["witt_shift_w8"][format!("n{n}")];
        let r = make_witt_shift(n);
        let myb = check_myb(&w, &r, window).map_err(err)?;
        require(myb.holds == want["myb"]["holds"].as_bool().unwrap(), || {
            format!("R_{n}: mYB {myb}")
        })?;
        let square = check_equal_operators(
            "R^2 = id",
            &r.pow(2).map_err(err)?,
            &LinearOperator::identity(),
            &w.indices(window),
        )
        .map_err(err)?;
        let witness = square
            .counterexample()
            .ok_or_else(|| format!("R_{n}^2 = id on the window"))?;
        require(
            witness.indices == vec![want["square_identity_witness"].as_i64().unwrap()],
            || format!("R_{n}: witness {:?}", witness.indices),
        )?;
        let primed = check_primed_lie_condition(&w, &r, window).map_err(err)?;
        require(
            primed.holds == want["primed_lie"]["holds"].as_bool().unwrap(),
            || format!("R_{n}: {primed}"),
        )?;
        notes.push(format!(
            "R_{n}: R^2 e_{} = {}",
            witness.indices[0], witness.lhs
        ));
    }
    Ok(format!(
        "mYB and primed condition match oracle; {}",
        notes.join(", ")
    ))
}

fn gamma_round_trip() -> Outcome {
    let mut count = 0;
    for (label, br, r, window) in myb_instances(8).map_err(err)? {
        if !check_myb(&br, &r, window).map_err(err)?.holds {
            continue;
        }
        let m = MybAlgebra::new(br.clone(), r, window).map_err(err)?;
        let p = make_gamma_bunch(&m).map_err(err)?;
        holds(
            &check_gamma_homomorphism(&p, &lambdas(), window).map_err(err)?,
            &label,
        )?;
        holds(&check_jacobi(p.direction(), window).map_err(err)?, &label)?;
        holds(
            &check_compatible(p.base(), p.direction(), window).map_err(err)?,
            &label,
        )?;
        count += 1;
    }
    require(count == 9, || format!("only {count} mYB instances"))?;
    Ok(format!("{count} instances"))
}

fn polynomial_stability() -> Outcome {
    let mut checked = 0;
    for (label, br, r, window) in myb_instances(8).map_err(err)? {
        for f in polynomial_set() {
            let fr = op_polynomial(&f, &r).map_err(err)?;
            holds(
                &check_myb(&br, &fr, window).map_err(err)?,
                &format!("{label}, f = {f:?}"),
            )?;
            checked += 1;
        }
        let brackets = (0..=3)
            .map(|k| tangent_bracket(&br, &r.pow(k)?))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        for a in 0..brackets.len() {
            for b in a + 1..brackets.len() {
                let r = check_compatible(&brackets[a], &brackets[b], window).map_err(err)?;
                holds(&r, &format!("{label}, powers {a} and {b}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} checks over 9 instances"))
}

fn associative_suite() -> Outcome {
    let w = Window::Full;
    let mut n = 0;
    for (label, a, q) in assoc_instances().map_err(err)? {
        let qe = mat_element(&q);
        let b = BiMyb::from_assoc(&a, &qe).map_err(err)?;
        let checks = [
            check_prop4(&a, &qe, w),
            check_bimyb(&b, w),
            check_remark4(&b, w),
            check_remark5(&b.algebra, &b.r1, &b.xi().map_err(err)?, w),
            check_remark6(&a, &qe, w),
            check_polynomial_stability(&b, &bimyb_polynomial_set(), w),
        ];
        for c in checks {
            holds(&c.map_err(err)?, &label)?;
        }
        let et = check_even_tempered(&b, w).map_err(err)?;
        holds(&et, &label)?;
        let def = et.clause("even-tempered (R1)").map(|c| c.holds);
        let alt = et.clause("even-tempered (R, xi form)").map(|c| c.holds);
        require(def.is_some() && def == alt, || {
            format!("{label}: forms disagree")
        })?;
        n += 1;
    }
    Ok(format!("{n} instances, both even-tempered forms agree"))
}

fn example2() -> Outcome {
    let mut out = Vec::new();
    for n in [3usize, 4] {
        let q = diag(&(1..=n as i64).collect::<Vec<_>>());
        let ex = make_example2(n, &q).map_err(err)?;
        let ctx = format!("so({n})");
        let (base, dir) = (ex.so_pencil.base(), ex.so_pencil.direction());
        holds(&check_jacobi(dir, Window::Full).map_err(err)?, &ctx)?;
        holds(
            &check_compatible(base, dir, Window::Full).map_err(err)?,
            &ctx,
        )?;
        holds(
            &check_gamma_homomorphism(&ex.ambient_pencil, &lambdas(), Window::Full).map_err(err)?,
            &ctx,
        )?;
        holds(&check_restriction(&ex).map_err(err)?, &ctx)?;
        out.push(ctx);
    }
    Ok(format!(
        "{} pencils and their ambient gl(n) pencils",
        out.join(", ")
    ))
}

fn sl2_representation() -> Outcome {
    let g = golden("oracle_verdicts.json");
    let ex = make_sl2().map_err(err)?;
    let rep = check_representation(&ex.representation, Window::Full).map_err(err)?;
    holds(rep.clause("lambda^0 coefficient").unwrap(), "lambda^0")?;
    holds(
        &check_faithful(&ex.representation).map_err(err)?,
        "faithful",
    )?;
    let det = ex.representation.images()[1].determinant().map_err(err)?;
    require(det == frac(-1, 4), || format!("det T(L_0) = {det}"))?;
    let linear = rep.clause("lambda^1 coefficient").unwrap();
    let want = g["sl2_rep"]["lambda1"]["holds"].as_bool().unwrap();
    require(linear.holds == want, || {
        format!("lambda^1 verdict {} vs oracle {want}", linear.holds)
    })?;
    let myb = check_myb(&ex.algebra, &ex.r, Window::Full).map_err(err)?;
    let want_myb = g["sl2_myb"]["holds"].as_bool().unwrap();
    require(myb.holds == want_myb, || {
        format!("mYB verdict {} vs oracle {want_myb}", myb.holds)
    })?;
    let claims = claims_matrix(&ClaimsConfig::default()).map_err(err)?;
    for (claim, verdict) in [("sl2-myb", myb.holds), ("sl2-rep-linear", linear.holds)] {
        let row = claims
            .rows
            .iter()
            .find(|r| r.claim == claim)
            .ok_or(format!("no {claim} row"))?;
        let expected = if Some(verdict) == row.asserted {
            Flag::Confirms
        } else {
            Flag::Contradicts
        };
        require(row.flag == expected, || {
            format!("{claim} flagged {}", row.flag)
        })?;
    }
    Ok(format!(
        "lambda^0 holds, rank 3, det -1/4; oracle agrees: mYB {}, lambda^1 {} (flagged CONTRADICTS)",
        if myb.holds { "holds" } else { "fails" },
        if linear.holds { "holds" } else { "fails" }
    ))
}

fn corollary() -> Outcome {
    let want = &golden("oracle_verdicts.json")["mat2_corollary_left_diag10"];
    let m = make_assoc_mat(2).map_err(err)?;
    let (left, _) = mult_operators(&m, &mat_element(&diag(&[1, 0]))).map_err(err)?;
    let myb =
        MybAlgebra::new(commutator_algebra(&m).map_err(err)?, left, Window::Full).map_err(err)?;
    let r = check_corollary(&myb, &lambdas(), Window::Full).map_err(err)?;
    require(r.holds == want["holds"].as_bool().unwrap(), || {
        format!("{r}")
    })?;
    require(
        r.clauses.len() as u64 == want["cells"].as_u64().unwrap(),
        || format!("{} cells", r.clauses.len()),
    )?;
    Ok(format!(
        "{} (z, lambda) cells, verdict {}",
        r.clauses.len(),
        if r.holds { "holds" } else { "fails" }
    ))
}

fn diamond_properties() -> Outcome {
    let m = make_assoc_mat(2).map_err(err)?;
    let gl2 = commutator_algebra(&m).map_err(err)?;
    let small = (-5i64..=5, 1i64..=3).prop_map(|(n, d)| frac(n, d));
    let coords = proptest::collection::vec(small.clone(), 4);
    let strategy = (
        coords.clone(),
        coords.clone(),
        coords.clone(),
        coords,
        small.clone(),
        small,
    );
    let mut runner = TestRunner::deterministic();
    let zero = |t: &[Rational]| t.iter().all(|x| *x == rat(0));
    for case in 0..100 {
        let (q1, q2, z1, z2, a, c) = strategy.new_tree(&mut runner).map_err(err)?.current();
        let s1 =
            bunchcheck::bimyb::sandwich_bracket(&m, &Element::from_coords(&q1)).map_err(err)?;
        let s2 =
            bunchcheck::bimyb::sandwich_bracket(&m, &Element::from_coords(&q2)).map_err(err)?;
        let alpha = BracketMap::combine("alpha", &[(a, &gl2), (rat(1), &s1)]).map_err(err)?;
        let beta = s2;
        let (z1, z2) = (Element::from_coords(&z1), Element::from_coords(&z2));
        let d = |x: &BracketMap, y: &BracketMap, z: &Element| -> Result<Vec<Rational>, String> {
            Ok(diamond_product(x, y, z)
                .map_err(err)?
                .structure_tensor()
                .map_err(err)?
                .flatten())
        };
        let (ab, ba) = (d(&alpha, &beta, &z1)?, d(&beta, &alpha, &z1)?);
        let sum: Vec<Rational> = ab.iter().zip(&ba).map(|(x, y)| x + y).collect();
        require(zero(&sum), || format!("case {case}: not antisymmetric"))?;
        let combined = d(&alpha, &beta, &(z1.clone() + z2.scale(&c)))?;
        let parts = d(&alpha, &beta, &z2)?;
        let lin: Vec<Rational> = combined
            .iter()
            .zip(ab.iter().zip(&parts))
            .map(|(s, (x, y))| s - x - y * &c)
            .collect();
        require(zero(&lin), || format!("case {case}: not linear in z"))?;
        require(zero(&d(&alpha, &alpha, &z1)?), || {
            format!("case {case}: diamond(a, a) != 0")
        })?;
    }
    let g = golden("closure.json");
    let b = build("closure").map_err(err)?;
    for (family, key) in [
        ("matrix_units", "mat2_matrix_units"),
        ("so3_pair", "so3_commutator_sandwich_diag123"),
    ] {
        let fam = BracketFamily::new(
            b.families[family]
                .iter()
                .map(|n| b.algebras[n].clone())
                .collect(),
        )
        .map_err(err)?;
        let r = check_family_closure(&fam, Window::Full).map_err(err)?;
        let part = r.clause("closed under diamond product").unwrap();
        require(part.holds == g[key]["closed"].as_bool().unwrap(), || {
            format!("{family}: {part}")
        })?;
        let first = part
            .counterexample()
            .map(|cx| Value::from(cx.indices.clone()))
            .unwrap_or(Value::Null);
        require(first == g[key]["first_escape"], || {
            format!("{family}: first escape {first}")
        })?;
    }
    Ok("100 random instances; closure verdicts match golden files".into())
}

fn cli_contract() -> Outcome {
    let dir = tempfile::tempdir().map_err(err)?;
    let write = |name: &str, text: &str| -> Result<String, String> {
        let p = dir.path().join(name);
        std::fs::write(&p, text).map_err(err)?;
        Ok(p.to_str().unwrap().to_string())
    };
    let export = |entry: &str| -> Result<String, String> {
        Ok(to_json(
            &export_document(&build(entry).map_err(err)?).map_err(err)?,
        ))
    };
    let so3 = write("so3.json", &export("so")?)?;
    let sl2 = write("sl2.json", &export("sl2")?)?;
    let bad = write(
        "bad.json",
        r#"{"algebras":{"a":{"kind":"structure_constants","dim":2,"brackets":[{"i":0,"j":1,"terms":[{"k":0,"c":"1/0"}]}]}}}"#,
    )?;
    let codes = [
        execute(["check", "jacobi", "--input", so3.as_str()]).code,
        execute(["check", "myb", "--input", sl2.as_str()]).code,
        execute(["check", "jacobi", "--input", bad.as_str()]).code,
    ];
    require(codes == [0, 1, 2], || format!("exit codes {codes:?}"))?;
    for e in ENTRIES {
        let text = export(e.name)?;
        let again = to_json(
            &export_document(&resolve(&parse_input(&text).map_err(err)?).map_err(err)?)
                .map_err(err)?,
        );
        require(again == text, || format!("{}: round trip differs", e.name))?;
    }
    let strip = |s: &str| -> Result<Value, String> {
        let mut v: Value = serde_json::from_str(s).map_err(err)?;
        v.as_object_mut()
            .ok_or("report is not an object")?
            .remove("elapsed_ms");
        Ok(v)
    };
    let args = [
        "check",
        "myb",
        "--json",
        "--all-counterexamples",
        "--input",
        sl2.as_str(),
    ];
    require(
        strip(&execute(args).stdout)? == strip(&execute(args).stdout)?,
        || "reports differ".into(),
    )?;
    Ok(format!(
        "exit codes {codes:?}, {} catalog round trips, deterministic reports",
        ENTRIES.len()
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("structural gates", structural_gates),
        ("Witt shift operators", witt_suite),
        ("mYB to gamma-bunch round trip", gamma_round_trip),
        ("polynomial stability", polynomial_stability),
        ("associative bi-mYB suite", associative_suite),
        ("skew-symmetric pencils and their embedding", example2),
        ("sl(2) representation", sl2_representation),
        ("perturbed operator", corollary),
        ("diamond product", diamond_properties),
        ("command-line contract", cli_contract),
    ];
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{ms} ms]", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{ms} ms]", n + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
