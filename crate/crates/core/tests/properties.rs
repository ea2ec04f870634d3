use std::collections::BTreeMap;

use bunchcheck::bimyb::{
    check_bimyb, check_even_tempered, mult_operators, sandwich_bracket, BiMyb,
};
use bunchcheck::bunch::{
    check_compatible, check_defect_forms, check_gamma_homomorphism_at, check_myb,
    check_primed_decomposition, check_remark2_criterion, make_gamma_bunch, tangent_bracket,
    MybAlgebra, Pencil,
};
use bunchcheck::catalog::{
    build, element_matrix, make_assoc_mat, make_sl2_bracket, make_so, mat_element,
};
use bunchcheck::cli::{export_document, load_bundle, to_json};
use bunchcheck::liecore::{
    ad, check_jacobi, is_derivation, op_polynomial, BasisIndex, BracketMap, CheckReport, Element,
    LinearOperator, Window,
};
use bunchcheck::ratlin::{
    format_rational, frac, parse_rational, rank, solve_linear, span_membership, Matrix, Rational,
};
use bunchcheck::rep::{
    check_faithful, check_representation, check_representation_at, diamond_product,
    BunchRepresentation,
};
use proptest::prelude::*;

fn small() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| frac(n, d))
}

fn vector(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(small(), n)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(vector(cols), rows).prop_map(|r| Matrix::from_rows(r).unwrap())
}

fn element(dim: usize) -> impl Strategy<Value = Element> {
    vector(dim).prop_map(|v| Element::from_coords(&v))
}

fn gl2() -> BracketMap {
    build("gl?n=2").unwrap().algebras["gl2"].clone()
}

/// A random combination of the commutator and two sandwich brackets on Mat(2).
fn mat2_bracket() -> impl Strategy<Value = BracketMap> {
    (small(), small(), matrix(2, 2), matrix(2, 2)).prop_map(|(a, b, q1, q2)| {
        let m = make_assoc_mat(2).unwrap();
        let s1 = sandwich_bracket(&m, &mat_element(&q1)).unwrap();
        let s2 = sandwich_bracket(&m, &mat_element(&q2)).unwrap();
        BracketMap::combine("mix", &[(a, &gl2()), (b, &s1), (frac(1, 1), &s2)]).unwrap()
    })
}

fn residuals(r: &CheckReport) -> BTreeMap<Vec<BasisIndex>, Element> {
    r.failures
        .iter()
        .map(|cx| (cx.indices.clone(), &cx.lhs - &cx.rhs))
        .collect()
}

fn residual(map: &BTreeMap<Vec<BasisIndex>, Element>, key: &[BasisIndex]) -> Element {
    map.get(key).cloned().unwrap_or_default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_are_canonical(q in small()) {
        prop_assert!(q.denom() > &0.into());
        prop_assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
    }

    #[test]
    fn rank_invariant_under_transpose(a in matrix(3, 4)) {
        prop_assert_eq!(rank(&a), rank(&a.transpose()));
        prop_assert!(rank(&a) <= 3);
    }

    #[test]
    fn solutions_resubstitute(a in matrix(3, 3), x0 in vector(3), b in vector(3)) {
        let consistent = a.mul_vec(&x0).unwrap();
        let x = solve_linear(&a, &consistent).unwrap().expect("consistent system");
        prop_assert_eq!(a.mul_vec(&x).unwrap(), consistent);
        if let Some(x) = solve_linear(&a, &b).unwrap() {
            prop_assert_eq!(a.mul_vec(&x).unwrap(), b);
        } else {
            prop_assert!(rank(&a) < 3);
        }
    }

    #[test]
    fn span_coefficients_reproduce_target(vs in prop::collection::vec(vector(5), 1..4), c in vector(3)) {
        let mut target = vec![Rational::from_integer(0.into()); 5];
        for (v, c) in vs.iter().zip(&c) {
            for (t, x) in target.iter_mut().zip(v) {
                *t += c * x;
            }
        }
        let coeffs = span_membership(&vs, &target).unwrap().expect("in span");
        let mut back = vec![Rational::from_integer(0.into()); 5];
        for (v, c) in vs.iter().zip(&coeffs) {
            for (t, x) in back.iter_mut().zip(v) {
                *t += c * x;
            }
        }
        prop_assert_eq!(back, target);
    }

    #[test]
    fn brackets_are_bilinear(br in mat2_bracket(), x in element(4), y in element(4), z in element(4), a in small(), b in small()) {
        let left = br.bracket(&(x.scale(&a) + y.scale(&b)), &z).unwrap();
        let right = br.bracket(&x, &z).unwrap().scale(&a) + br.bracket(&y, &z).unwrap().scale(&b);
        prop_assert_eq!(left, right);
        prop_assert_eq!(br.bracket(&x, &y).unwrap(), -br.bracket(&y, &x).unwrap());
    }

    #[test]
    fn horner_matches_power_sum(r in matrix(3, 3), coeffs in vector(4)) {
        let op = LinearOperator::dense(r.clone()).unwrap();
        let horner = op_polynomial(&coeffs, &op).unwrap();
        let mut sum = Matrix::zeros(3, 3);
        let mut power = Matrix::identity(3);
        for c in &coeffs {
            sum = sum.add(&power.scale(c)).unwrap();
            power = power.mul(&r).unwrap();
        }
        prop_assert_eq!(horner.to_matrix(3).unwrap(), sum);
        // Graded operators stay symbolic; compare on a vector.
        let shift = LinearOperator::shift(2);
        let poly = op_polynomial(&coeffs, &shift).unwrap();
        let e = Element::basis(-1);
        let mut expect = Element::zero();
        for (k, c) in coeffs.iter().enumerate() {
            expect.add_term(-1 + 2 * k as i64, c);
        }
        prop_assert_eq!(poly.apply(&e).unwrap(), expect);
    }

    #[test]
    fn derivations_have_trivial_tangent(z in element(4), r in matrix(4, 4)) {
        let br = gl2();
        let d = ad(&br, &z).unwrap();
        prop_assert!(is_derivation(&d, &br, Window::Full).unwrap().holds);
        prop_assert!(tangent_bracket(&br, &d).unwrap().structure_tensor().unwrap().is_zero());
        let op = LinearOperator::dense(r).unwrap();
        let trivial = tangent_bracket(&br, &op).unwrap().structure_tensor().unwrap().is_zero();
        prop_assert_eq!(is_derivation(&op, &br, Window::Full).unwrap().holds, trivial);
    }

    #[test]
    fn tangent_identities_for_any_operator(r in matrix(3, 3)) {
        let so3 = make_so(3).unwrap();
        let op = LinearOperator::dense(r).unwrap();
        prop_assert!(check_primed_decomposition(&so3, &op, Window::Full).unwrap().holds);
        prop_assert!(check_defect_forms(&so3, &op, Window::Full).unwrap().holds);
        let tangent = tangent_bracket(&so3, &op).unwrap();
        prop_assert!(check_compatible(&so3, &tangent, Window::Full).unwrap().holds);
        // The defect criterion is the Jacobiator of the tangent bracket.
        let criterion = check_remark2_criterion(&so3, &op, Window::Full).unwrap();
        let jacobi = check_jacobi(&tangent, Window::Full).unwrap();
        prop_assert_eq!(residuals(&criterion), residuals(&jacobi));
    }

    #[test]
    fn multiplication_operators_give_gamma_bunches(q in matrix(2, 2), l in small()) {
        let m = make_assoc_mat(2).unwrap();
        let (left, right) = mult_operators(&m, &mat_element(&q)).unwrap();
        for r in [left, right] {
            let myb = MybAlgebra::new(gl2(), r, Window::Full).unwrap();
            let p = make_gamma_bunch(&myb).unwrap();
            prop_assert!(check_jacobi(p.direction(), Window::Full).unwrap().holds);
            prop_assert!(check_gamma_homomorphism_at(&p, &l, Window::Full).unwrap().holds);
        }
        let b = BiMyb::from_assoc(&m, &mat_element(&q)).unwrap();
        prop_assert!(check_bimyb(&b, Window::Full).unwrap().holds);
        prop_assert!(check_even_tempered(&b, Window::Full).unwrap().holds);
    }

    #[test]
    fn representation_identity_is_affine_in_lambda(images in prop::collection::vec(matrix(2, 2), 3), q in matrix(2, 2), l in small()) {
        let sl2 = make_sl2_bracket().unwrap();
        let r = LinearOperator::diagonal(vec![frac(-1, 1), frac(0, 1), frac(1, 1)]);
        let p = Pencil::new(sl2.clone(), tangent_bracket(&sl2, &r).unwrap(), Some(r)).unwrap();
        let rep = BunchRepresentation::new(p, images, q).unwrap();
        let split = check_representation(&rep, Window::Full).unwrap();
        let r0 = residuals(split.clause("lambda^0 coefficient").unwrap());
        let r1 = residuals(split.clause("lambda^1 coefficient").unwrap());
        let at = residuals(&check_representation_at(&rep, &l, Window::Full).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                let key = [i, j];
                let expect = residual(&r0, &key) + residual(&r1, &key).scale(&l);
                prop_assert_eq!(residual(&at, &key), expect);
            }
        }
        if split.holds {
            prop_assert!(check_representation_at(&rep, &l, Window::Full).unwrap().holds);
        }
    }

    #[test]
    fn faithfulness_is_monotone(images in prop::collection::vec(matrix(2, 2), 3), drop in 0usize..3) {
        let sl2 = make_sl2_bracket().unwrap();
        let p = Pencil::new(sl2.clone(), sl2.clone(), None).unwrap();
        let full = BunchRepresentation::new(p.clone(), images.clone(), Matrix::identity(2)).unwrap();
        let mut fewer = images.clone();
        fewer[drop] = Matrix::zeros(2, 2);
        let reduced = BunchRepresentation::new(p, fewer, Matrix::identity(2)).unwrap();
        // Failure reports carry the rank; a pass means full rank.
        let rank_of = |r: &CheckReport, n: i64| -> i64 {
            r.counterexample().map_or(n, |cx| cx.lhs.coeff(0).to_integer().try_into().unwrap())
        };
        let (a, b) = (check_faithful(&full).unwrap(), check_faithful(&reduced).unwrap());
        prop_assert!(!b.holds);
        prop_assert!(rank_of(&b, 3) <= rank_of(&a, 3));
    }

    #[test]
    fn documents_round_trip(entries in prop::collection::vec((0usize..3, 0usize..3, 0usize..3, small()), 0..6)) {
        let entries: Vec<_> = entries.into_iter().filter(|(i, j, _, _)| i < j).collect();
        let mut seen = std::collections::BTreeSet::new();
        let entries: Vec<_> = entries.into_iter().filter(|(i, j, k, _)| seen.insert((*i, *j, *k))).collect();
        let br = BracketMap::from_structure_constants("a", 3, entries).unwrap();
        let mut b = bunchcheck::catalog::Bundle::default();
        b.algebras.insert("a".into(), br.clone());
        let text = to_json(&export_document(&b).unwrap());
        let back = load_bundle(&text).unwrap();
        prop_assert_eq!(back.algebras["a"].structure_tensor().unwrap(), br.structure_tensor().unwrap());
        prop_assert_eq!(to_json(&export_document(&back).unwrap()), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn diamond_antisymmetric_and_linear(alpha in mat2_bracket(), beta in mat2_bracket(), z1 in element(4), z2 in element(4), c in small()) {
        let d = |a: &BracketMap, b: &BracketMap, z: &Element| diamond_product(a, b, z).unwrap().structure_tensor().unwrap().flatten();
        let ab = d(&alpha, &beta, &z1);
        let ba = d(&beta, &alpha, &z1);
        prop_assert!(ab.iter().zip(&ba).all(|(x, y)| x == &-y.clone()));
        let combo = d(&alpha, &beta, &(z1.clone() + z2.scale(&c)));
        let parts = d(&alpha, &beta, &z2);
        prop_assert!(combo.iter().zip(ab.iter().zip(&parts)).all(|(s, (x, y))| s == &(x + &(y * &c))));
        prop_assert!(d(&alpha, &alpha, &z1).iter().all(|x| x == &Rational::from_integer(0.into())));
    }
}

#[test]
fn element_matrix_round_trip() {
    let m = Matrix::from_rows(vec![
        vec![frac(1, 2), frac(0, 1)],
        vec![frac(-3, 1), frac(2, 5)],
    ])
    .unwrap();
    assert_eq!(element_matrix(2, &mat_element(&m)).unwrap(), m);
}

#[test]
fn myb_check_is_deterministic() {
    let br = gl2();
    let r = LinearOperator::dense(Matrix::identity(4)).unwrap();
    assert_eq!(
        check_myb(&br, &r, Window::Full).unwrap(),
        check_myb(&br, &r, Window::Full).unwrap()
    );
}
