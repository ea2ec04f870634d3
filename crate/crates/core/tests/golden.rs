//! Frozen verdicts from an independent brute-force oracle (`golden/oracle.py`,
//! plain Python fractions and explicit matrices).

use bunchcheck::bimyb::{mult_operators, sandwich_bracket};
use bunchcheck::bunch::{
    check_mcybe_variant, check_myb, check_primed_lie_condition, check_remark2_criterion,
    tangent_eval, MybAlgebra,
};
use bunchcheck::catalog::{
    build, diag, make_assoc_mat, make_sl2, make_so, make_witt, make_witt_shift, mat_element,
};
use bunchcheck::cli::{export_document, load_bundle, to_json};
use bunchcheck::liecore::{
    ad, is_derivation, op_commutator, BracketMap, CheckReport, Element, LinearOperator, Window,
};
use bunchcheck::ratlin::{format_rational, parse_rational, rat, Matrix, Rational};
use bunchcheck::rep::{
    check_corollary, check_faithful, check_family_closure, check_representation, diamond_product,
    BracketFamily,
};
use serde_json::Value;

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn q(v: &Value) -> Rational {
    match v {
        Value::String(s) => parse_rational(s).unwrap(),
        Value::Number(n) => rat(n.as_i64().unwrap()),
        other => panic!("not a rational: {other}"),
    }
}

fn coords(v: &Value) -> Element {
    Element::from_coords(&v.as_array().unwrap().iter().map(q).collect::<Vec<_>>())
}

fn indices(v: &Value) -> Vec<i64> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect()
}

fn assert_first(r: &CheckReport, want: &Value) {
    match want {
        Value::Null => assert!(r.holds, "{r}"),
        v => {
            assert!(!r.holds);
            assert_eq!(r.counterexample().unwrap().indices, indices(v), "{r}");
        }
    }
}

#[test]
fn so3_rotation_bracket() {
    let g = golden("oracle_verdicts.json");
    let so3 = make_so(3).unwrap();
    let b = so3.basis_bracket(0, 1).unwrap();
    assert_eq!(b, coords(&g["so3_rotation_b0_b1"]));
}

#[test]
fn sl2_verdicts() {
    let g = golden("oracle_verdicts.json");
    let ex = make_sl2().unwrap();
    let myb = check_myb(&ex.algebra, &ex.r, Window::Full).unwrap();
    let want = &g["sl2_myb"];
    assert_eq!(myb.holds, want["holds"].as_bool().unwrap());
    assert_eq!(
        myb.failures.len() as u64,
        want["failures"].as_u64().unwrap()
    );
    let cx = myb.counterexample().unwrap();
    assert_eq!(cx.indices, indices(&want["first"]["pair"]));
    assert_eq!(cx.lhs, coords(&want["first"]["lhs"]));
    assert_eq!(cx.rhs, coords(&want["first"]["rhs"]));

    for (c, key) in [(1, "sl2_mcybe_c1"), (0, "sl2_mcybe_c0")] {
        let r = check_mcybe_variant(&ex.algebra, &ex.r, &rat(c), Window::Full).unwrap();
        assert_eq!(r.holds, g[key]["holds"].as_bool().unwrap());
        assert_first(&r, &g[key]["first"]);
    }

    let rep = check_representation(&ex.representation, Window::Full).unwrap();
    let want = &g["sl2_rep"];
    assert_eq!(
        rep.clause("lambda^0 coefficient").unwrap().holds,
        want["lambda0"]["holds"].as_bool().unwrap()
    );
    let lin = rep.clause("lambda^1 coefficient").unwrap();
    assert_eq!(lin.holds, want["lambda1"]["holds"].as_bool().unwrap());
    let cx = lin.counterexample().unwrap();
    assert_eq!(cx.indices, indices(&want["lambda1"]["first"]["pair"]));
    assert_eq!(cx.lhs, coords(&want["lambda1"]["first"]["lhs"]));
    assert_eq!(cx.rhs, coords(&want["lambda1"]["first"]["rhs"]));
    let faithful = check_faithful(&ex.representation).unwrap();
    assert!(faithful.holds);
    assert_eq!(faithful.failures.len(), 0);
    let stacked = Matrix::from_rows(
        ex.representation
            .images()
            .iter()
            .map(|m| m.entries().to_vec())
            .collect(),
    )
    .unwrap();
    assert_eq!(stacked.rank() as u64, want["rank"].as_u64().unwrap());
    let det = ex.representation.images()[1].determinant().unwrap();
    assert_eq!(format_rational(&det), want["det_T_L0"].as_str().unwrap());
}

#[test]
fn sl2_inner_derivations() {
    let g = golden("oracle_verdicts.json");
    let ex = make_sl2().unwrap();
    for p in 0..3 {
        let r = ad(&ex.algebra, &Element::basis(p)).unwrap();
        let report = check_remark2_criterion(&ex.algebra, &r, Window::Full).unwrap();
        let want = &g["sl2_remark2_ad"][format!("z{p}")];
        assert_eq!(report.holds, want["holds"].as_bool().unwrap());
        assert_first(&report, &want["first"]);
    }
    let c = op_commutator(&ad(&ex.algebra, &Element::basis(2)).unwrap(), &ex.r).unwrap();
    let want: Vec<Vec<Rational>> = g["sl2_commutator_ad_L1_diag"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_array().unwrap().iter().map(q).collect())
        .collect();
    assert_eq!(c.to_matrix(3).unwrap().to_rows(), want);
}

#[test]
fn so3_primed_lie_diagonal() {
    let g = golden("oracle_verdicts.json");
    let so3 = make_so(3).unwrap();
    let r = LinearOperator::diagonal(vec![rat(1), rat(2), rat(3)]);
    let report = check_primed_lie_condition(&so3, &r, Window::Full).unwrap();
    assert_eq!(
        report.holds,
        g["so3_primed_lie_diag123"]["holds"].as_bool().unwrap()
    );
}

#[test]
fn mat2_corollary_cells() {
    let g = golden("oracle_verdicts.json");
    let m = make_assoc_mat(2).unwrap();
    let (left, _) = mult_operators(&m, &mat_element(&diag(&[1, 0]))).unwrap();
    let gl2 = build("gl?n=2").unwrap().algebras["gl2"].clone();
    let myb = MybAlgebra::new(gl2, left, Window::Full).unwrap();
    let r = check_corollary(&myb, &[rat(0), rat(1), rat(2)], Window::Full).unwrap();
    let want = &g["mat2_corollary_left_diag10"];
    assert_eq!(r.holds, want["holds"].as_bool().unwrap());
    assert_eq!(r.clauses.len() as u64, want["cells"].as_u64().unwrap());
}

#[test]
fn witt_shift_values() {
    let g = golden("oracle_verdicts.json");
    let witt = make_witt(6).unwrap();
    let r = make_witt_shift(1);
    let d = is_derivation(&r, &witt, Window::Symmetric(6)).unwrap();
    let want = &g["witt_shift1_derivation_first_failure_w6"];
    let cx = d.counterexample().unwrap();
    let grade = want["grade"].as_i64().unwrap();
    assert_eq!(cx.indices, indices(&want["pair"]));
    assert_eq!(cx.lhs, Element::term(grade, q(&want["lhs"])));
    assert_eq!(cx.rhs, Element::term(grade, q(&want["rhs"])));

    let t = tangent_eval(&witt, &r, &Element::basis(1), &Element::basis(2)).unwrap();
    assert_eq!(t, Element::term(4, q(&g["witt_tangent_shift1_e1_e2"])));
}

fn tensor_entries(br: &BracketMap) -> Vec<(usize, usize, usize, Rational)> {
    let t = br.structure_tensor().unwrap();
    t.iter()
        .map(|(&(i, j, k), c)| (i, j, k, c.clone()))
        .collect()
}

#[test]
fn diamond_tensors() {
    let g = golden("diamond.json");
    let mat2 = make_assoc_mat(2).unwrap();
    let gl2 = build("gl?n=2").unwrap().algebras["gl2"].clone();
    let s2 = sandwich_bracket(&mat2, &mat_element(&diag(&[1, 0]))).unwrap();
    let closure = build("closure").unwrap();
    let (so3, s3) = (&closure.algebras["so3"], &closure.algebras["so3_sandwich"]);
    let cases = [
        ("mat2_diag10_z_e11", &gl2, &s2),
        ("mat2_diag10_z_e12", &gl2, &s2),
        ("so3_diag123_z_b0", so3, s3),
    ];
    for (name, alpha, beta) in cases {
        let want = &g[name];
        assert_eq!(alpha.dim().unwrap() as u64, want["dim"].as_u64().unwrap());
        let z = Element::basis(want["z"].as_i64().unwrap());
        let got = tensor_entries(&diamond_product(alpha, beta, &z).unwrap());
        let expected: Vec<_> = want["entries"]
            .as_array()
            .unwrap()
            .iter()
            .map(|e| {
                let f = |k: &str| e[k].as_u64().unwrap() as usize;
                (f("i"), f("j"), f("k"), q(&e["c"]))
            })
            .collect();
        assert_eq!(got, expected, "{name}");
    }
}

#[test]
fn family_closure_verdicts() {
    let g = golden("closure.json");
    let closure = build("closure").unwrap();
    for (family, key) in [
        ("matrix_units", "mat2_matrix_units"),
        ("so3_pair", "so3_commutator_sandwich_diag123"),
    ] {
        let members = closure.families[family]
            .iter()
            .map(|m| closure.algebras[m].clone())
            .collect();
        let fam = BracketFamily::new(members).unwrap();
        let r = check_family_closure(&fam, Window::Full).unwrap();
        let want = &g[key];
        let part = r.clause("closed under diamond product").unwrap();
        assert_eq!(part.holds, want["closed"].as_bool().unwrap(), "{key}");
        assert_eq!(
            part.tuples_checked as u64,
            want["triples_checked"].as_u64().unwrap()
        );
        assert_eq!(
            fam.span_rank().unwrap() as u64,
            want["span_rank"].as_u64().unwrap()
        );
        assert_first(part, &want["first_escape"]);
    }
}

#[test]
fn exported_documents_reproduce_verdicts() {
    // The same sl(2) verdict through the JSON document path.
    let text = to_json(&export_document(&build("sl2").unwrap()).unwrap());
    let b = load_bundle(&text).unwrap();
    let r = check_myb(&b.algebras["sl2"], &b.operators["R"], Window::Full).unwrap();
    assert_eq!(r.counterexample().unwrap().indices, vec![0, 2]);
}
