use std::fmt;

use num_traits::Zero;

use super::builders::{
    check_restriction, diag, make_assoc_mat, make_example2, make_gl, make_sl2, make_so, make_witt,
    make_witt_shift, mat_element, symmetric_offdiag3,
};
use crate::bimyb::{
    check_bimyb, check_even_tempered, check_polynomial_stability, check_prop4, check_remark4,
    check_remark5, check_remark6, mult_operators, sandwich_bracket, AssocAlgebra, BiMyb,
};
use crate::bunch::{
    check_compatible, check_defect_forms, check_gamma_homomorphism, check_mcybe_variant, check_myb,
    check_primed_decomposition, check_primed_lie_condition, check_remark2_criterion,
    make_gamma_bunch, tangent_bracket, MybAlgebra,
};
use crate::error::Result;
use crate::liecore::{
    ad, check_equal_brackets, check_equal_operators, check_jacobi, is_derivation, op_polynomial,
    BasisKind, BracketMap, CheckReport, Element, LinearOperator, Window,
};
use crate::ratlin::{format_polynomial, rat, Matrix, Rational};
use crate::rep::{
    check_corollary, check_faithful, check_family_closure, check_representation, BracketFamily,
};

/// How a mechanical verdict relates to what the source asserts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flag {
    Confirms,
    Contradicts,
    /// Not mechanized (universal negatives, existence statements).
    NotChecked,
    /// Computed, but the source makes no assertion to compare with.
    Recorded,
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Flag::Confirms => "CONFIRMS",
            Flag::Contradicts => "CONTRADICTS",
            Flag::NotChecked => "NOT-CHECKED",
            Flag::Recorded => "RECORDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimRow {
    /// Stable identifier of the statement.
    pub claim: String,
    /// What is asserted, in words.
    pub statement: String,
    pub instance: String,
    /// Expected verdict of `report`, when the source asserts one.
    pub asserted: Option<bool>,
    pub flag: Flag,
    pub report: Option<CheckReport>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimsConfig {
    pub witt_window: u32,
    pub lambdas: Vec<Rational>,
}

impl Default for ClaimsConfig {
    fn default() -> Self {
        Self {
            witt_window: 8,
            lambdas: vec![rat(0), rat(1), rat(2)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimsMatrix {
    pub config: ClaimsConfig,
    pub rows: Vec<ClaimRow>,
}

impl ClaimsMatrix {
    pub fn contradictions(&self) -> impl Iterator<Item = &ClaimRow> {
        self.rows.iter().filter(|r| r.flag == Flag::Contradicts)
    }

    pub fn row(&self, claim: &str, instance: &str) -> Option<&ClaimRow> {
        self.rows
            .iter()
            .find(|r| r.claim == claim && r.instance == instance)
    }
}

struct Rows(Vec<ClaimRow>);

impl Rows {
    fn push(
        &mut self,
        claim: &str,
        statement: &str,
        instance: impl Into<String>,
        asserted: Option<bool>,
        report: CheckReport,
    ) {
        let flag = match asserted {
            Some(expected) if report.holds == expected => Flag::Confirms,
            Some(_) => Flag::Contradicts,
            None => Flag::Recorded,
        };
        self.0.push(ClaimRow {
            claim: claim.into(),
            statement: statement.into(),
            instance: instance.into(),
            asserted,
            flag,
            report: Some(report),
        });
    }

    fn asserts(
        &mut self,
        claim: &str,
        statement: &str,
        instance: impl Into<String>,
        report: CheckReport,
    ) {
        self.push(claim, statement, instance, Some(true), report);
    }

    fn not_checked(&mut self, claim: &str, statement: &str, instance: &str) {
        self.0.push(ClaimRow {
            claim: claim.into(),
            statement: statement.into(),
            instance: instance.into(),
            asserted: None,
            flag: Flag::NotChecked,
            report: None,
        });
    }
}

/// Report of a boolean fact, `lhs = {0: 1}` when true against `rhs = {0: 1}`.
pub fn fact(identity: &str, value: bool) -> CheckReport {
    let as_el = |b: bool| Element::term(0, rat(b as i64));
    CheckReport::single(identity, vec![], as_el(value), as_el(true))
}

/// Matrix-algebra instances used across the associative suites.
pub fn assoc_instances() -> Result<Vec<(String, AssocAlgebra, Matrix)>> {
    Ok(vec![
        (
            "mat(2), Q = diag(1,0)".into(),
            make_assoc_mat(2)?,
            diag(&[1, 0]),
        ),
        (
            "mat(3), Q = diag(1,0,-1)".into(),
            make_assoc_mat(3)?,
            diag(&[1, 0, -1]),
        ),
        (
            "mat(3), Q = E12+E21+2E33".into(),
            make_assoc_mat(3)?,
            symmetric_offdiag3(),
        ),
    ])
}

/// Instances `(label, algebra, R)` known to satisfy the mYB identity.
pub fn myb_instances(
    witt_window: u32,
) -> Result<Vec<(String, BracketMap, LinearOperator, Window)>> {
    let mut out = Vec::new();
    let w = make_witt(witt_window)?;
    for n in 1..=3 {
        out.push((
            format!("witt, R_{n}"),
            w.clone(),
            make_witt_shift(n),
            Window::Full,
        ));
    }
    for (label, a, q) in assoc_instances()? {
        let br = crate::bimyb::commutator_algebra(&a)?;
        let (left, right) = mult_operators(&a, &mat_element(&q))?;
        out.push((format!("{label}, left"), br.clone(), left, Window::Full));
        out.push((format!("{label}, right"), br, right, Window::Full));
    }
    Ok(out)
}

pub fn polynomial_set() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(0), rat(0), rat(1)],
        vec![rat(1), rat(2), rat(0), rat(1)],
        vec![rat(3)],
    ]
}

pub fn bimyb_polynomial_set() -> Vec<Vec<Rational>> {
    vec![
        vec![rat(0), rat(0), rat(1)],
        vec![rat(1), rat(1)],
        vec![rat(0), rat(-1), rat(0), rat(1)],
    ]
}

/// Runs every mechanized statement on the catalog instances. Row order is
/// fixed, so identical configurations give identical matrices.
pub fn claims_matrix(config: &ClaimsConfig) -> Result<ClaimsMatrix> {
    let mut rows = Rows(Vec::new());
    let lambdas = &config.lambdas;
    let ww = config.witt_window;
    let witt = make_witt(ww)?;
    let full = Window::Full;

    // Graded example: shift operators on the Witt algebra.
    for n in 1..=3 {
        let r = make_witt_shift(n);
        let inst = format!("witt, R_{n}, W={ww}");
        rows.asserts(
            "witt-shift-myb",
            "shift operators satisfy the mYB identity",
            &inst,
            check_myb(&witt, &r, full)?,
        );
        let square = check_equal_operators(
            "R_n^2 = Id",
            &r.pow(2)?,
            &LinearOperator::identity(),
            &witt.indices(full),
        )?;
        rows.push(
            "witt-shift-square",
            "squares of the shift operators are not the identity",
            &inst,
            Some(false),
            square,
        );
        rows.asserts(
            "witt-primed-lie",
            "[R^2[x,y],z] + cyclic = 0 for the shift operators",
            &inst,
            check_primed_lie_condition(&witt, &r, full)?,
        );
        rows.push(
            "witt-classical-c0",
            "classical normalization with c = 0 (comparison only)",
            &inst,
            None,
            check_mcybe_variant(&witt, &r, &rat(0), full)?,
        );
    }

    // Tangent bracket and defect identities.
    let sl2 = make_sl2()?;
    let r1 = make_witt_shift(1);
    let small = Window::Symmetric(ww.min(4));
    rows.asserts(
        "primed-decomposition",
        "primed bracket = tangent bracket + R o bracket",
        "witt, R_1",
        check_primed_decomposition(&witt, &r1, full)?,
    );
    rows.asserts(
        "defect-forms",
        "compact and expanded defect agree",
        "witt, R_1",
        check_defect_forms(&witt, &r1, full)?,
    );
    let so3 = make_so(3)?;
    let d123 = LinearOperator::diagonal(vec![rat(1), rat(2), rat(3)]);
    rows.asserts(
        "defect-forms",
        "compact and expanded defect agree",
        "so(3), diag(1,2,3)",
        check_defect_forms(&so3, &d123, full)?,
    );
    for p in 0..3 {
        let r = ad(&sl2.algebra, &Element::basis(p))?;
        let inst = format!("sl(2), R = ad(b_{p})");
        let deriv = is_derivation(&r, &sl2.algebra, full)?;
        let tangent_zero = tangent_bracket(&sl2.algebra, &r)?.is_zero_on(full)?;
        rows.asserts(
            "derivation-trivial-tangent",
            "R is a derivation exactly when the tangent bracket vanishes",
            &inst,
            CheckReport::all_of(
                "derivation <=> zero tangent",
                vec![deriv, fact("tangent bracket is zero", tangent_zero)],
            ),
        );
        rows.asserts(
            "defect-jacobi-criterion",
            "tangent bracket is Lie iff the defect criterion holds",
            &inst,
            check_remark2_criterion(&sl2.algebra, &r, full)?,
        );
    }
    let witt_deriv = is_derivation(&r1, &witt, full)?.holds;
    let witt_zero = tangent_bracket(&witt, &r1)?.is_zero_on(full)?;
    rows.asserts(
        "derivation-trivial-tangent",
        "R is a derivation exactly when the tangent bracket vanishes",
        "witt, R_1",
        fact(
            "derivation verdict = zero-tangent verdict",
            witt_deriv == witt_zero,
        ),
    );
    rows.asserts(
        "tangent-compatible",
        "bracket and tangent bracket always satisfy the mixed Jacobi identity",
        "so(3), diag(1,2,3)",
        check_compatible(&so3, &tangent_bracket(&so3, &d123)?, full)?,
    );
    rows.asserts(
        "tangent-compatible",
        "bracket and tangent bracket always satisfy the mixed Jacobi identity",
        "witt, R_1",
        check_compatible(&witt, &tangent_bracket(&witt, &r1)?, small)?,
    );
    rows.push(
        "primed-lie",
        "[R^2[x,y],z] + cyclic = 0",
        "so(3), diag(1,2,3)",
        None,
        check_primed_lie_condition(&so3, &d123, full)?,
    );

    // mYB instances: tangent Lie, Gamma-bunch, polynomial stability.
    for (inst, br, r, window) in myb_instances(ww)? {
        let win = if br.kind() == BasisKind::Graded {
            small
        } else {
            window
        };
        let m = MybAlgebra::new_unchecked(br.clone(), r.clone(), win);
        rows.asserts(
            "myb-instance",
            "operator satisfies the mYB identity",
            &inst,
            check_myb(&br, &r, win)?,
        );
        rows.asserts(
            "myb-tangent-lie",
            "mYB implies the tangent bracket is Lie",
            &inst,
            check_jacobi(&tangent_bracket(&br, &r)?, win)?,
        );
        let pencil = make_gamma_bunch(&m)?;
        let parts = vec![
            check_gamma_homomorphism(&pencil, lambdas, win)?,
            check_compatible(pencil.base(), pencil.direction(), win)?,
        ];
        rows.asserts(
            "gamma-bunch",
            "mYB operator yields a linear Gamma-bunch",
            &inst,
            CheckReport::all_of("gamma bunch", parts),
        );
        let mut parts = Vec::new();
        for f in polynomial_set() {
            let name = format!("myb for f = {}", format_polynomial(&f));
            parts.push(check_myb(&br, &op_polynomial(&f, &r)?, win)?.renamed(name));
        }
        rows.asserts(
            "polynomial-myb",
            "polynomials of an mYB operator are mYB",
            &inst,
            CheckReport::all_of("polynomial stability", parts),
        );
        if br.dim().is_some() {
            let powers = (0..4u32)
                .map(|k| tangent_bracket(&br, &r.pow(k)?))
                .collect::<Result<Vec<_>>>()?;
            let mut parts = Vec::new();
            for a in 0..powers.len() {
                for b in a + 1..powers.len() {
                    parts.push(
                        check_compatible(&powers[a], &powers[b], win)?
                            .renamed(format!("R^{a} vs R^{b}")),
                    );
                }
            }
            rows.asserts(
                "power-tangents-compatible",
                "tangent brackets of R^k are pairwise compatible",
                &inst,
                CheckReport::all_of("compatible powers", parts),
            );
        }
    }

    // Associative constructions.
    for (inst, a, q) in assoc_instances()? {
        let qe = mat_element(&q);
        let b = BiMyb::from_assoc(&a, &qe)?;
        rows.asserts(
            "multiplication-myb",
            "left and right multiplication are mYB with tangent xQy - yQx",
            &inst,
            check_prop4(&a, &qe, full)?,
        );
        rows.asserts(
            "multiplication-bimyb",
            "right and left multiplication form a bi-mYB structure",
            &inst,
            check_bimyb(&b, full)?,
        );
        rows.asserts(
            "bimyb-difference-derivation",
            "R1 - R2 is a derivation",
            &inst,
            check_remark4(&b, full)?,
        );
        rows.asserts(
            "bimyb-derivation-splitting",
            "xi = R2 - R1 is a derivation commuting with R1 with [xi x, xi y] = tangent of R1 xi",
            &inst,
            check_remark5(&b.algebra, &b.r1, &b.xi()?, full)?,
        );
        rows.asserts(
            "q-bracket",
            "q-bracket is Lie, equals the tangent of R^2, and is compatible",
            &inst,
            check_remark6(&a, &qe, full)?,
        );
        rows.asserts(
            "even-tempered",
            "multiplication bi-mYB structure is even-tempered",
            &inst,
            check_even_tempered(&b, full)?,
        );
        rows.asserts(
            "polynomial-bimyb",
            "polynomials preserve bi-mYB structures",
            &inst,
            check_polynomial_stability(&b, &bimyb_polynomial_set(), full)?,
        );
    }

    // Skew-symmetric pencils and their ambient matrix pencils.
    for n in [3usize, 4] {
        let q = diag(&(1..=n as i64).collect::<Vec<_>>());
        let ex = make_example2(n, &q)?;
        let inst = format!("so({n}), Q = diag(1..{n})");
        let parts = vec![
            check_jacobi(ex.so_pencil.direction(), full)?.renamed("jacobi (direction)"),
            check_compatible(ex.so_pencil.base(), ex.so_pencil.direction(), full)?,
        ];
        rows.asserts(
            "skew-pencil-compatible",
            "XQY - YQX is a Lie bracket compatible with the commutator",
            &inst,
            CheckReport::all_of("skew pencil", parts),
        );
        rows.asserts(
            "ambient-gamma",
            "ambient matrix pencil is a Gamma-bunch for left multiplication by Q",
            &inst,
            check_gamma_homomorphism(&ex.ambient_pencil, lambdas, full)?,
        );
        rows.asserts(
            "skew-pencil-embedding",
            "skew pencil embeds in the ambient pencil",
            &inst,
            check_restriction(&ex)?,
        );
    }
    rows.not_checked(
        "real-forms-no-embedding",
        "some members isomorphic to so(p,q) admit no homomorphism into so(n)",
        "so(n) pencils",
    );

    // The three-dimensional example.
    let inst = "sl(2), R = diag(-1,0,1)";
    rows.asserts(
        "sl2-myb",
        "the grading operator satisfies the mYB identity",
        inst,
        check_myb(&sl2.algebra, &sl2.r, full)?,
    );
    rows.push(
        "sl2-classical-c1",
        "classical normalization with c = 1 (comparison only)",
        inst,
        None,
        check_mcybe_variant(&sl2.algebra, &sl2.r, &rat(1), full)?,
    );
    let rep = check_representation(&sl2.representation, full)?;
    let [constant, linear]: [CheckReport; 2] = rep.clauses.clone().try_into().expect("two clauses");
    let rep_inst = "sl(2) fundamental, Q_R = T(L_0)";
    rows.asserts(
        "sl2-rep-constant",
        "T is a representation of the base bracket",
        rep_inst,
        constant,
    );
    rows.asserts(
        "sl2-rep-linear",
        "T represents the tangent direction with Q_R = T(L_0)",
        rep_inst,
        linear,
    );
    rows.asserts(
        "sl2-faithful",
        "the fundamental representation is faithful",
        rep_inst,
        check_faithful(&sl2.representation)?,
    );
    let t0 = sl2.representation.q_op();
    let facts = vec![
        fact("T(L_0) invertible", !t0.determinant()?.is_zero()),
        fact("R L_0 = 0", sl2.r.apply_basis(1)?.is_zero()),
        fact("T(L_1) nonzero", !sl2.representation.images()[2].is_zero()),
    ];
    rows.asserts(
        "sl2-obstruction-facts",
        "facts behind the non-existence of a matrix bi-mYB homomorphism",
        rep_inst,
        CheckReport::all_of("obstruction facts", facts),
    );
    rows.not_checked(
        "sl2-no-bimyb-homomorphism",
        "no homomorphism into the matrix bi-mYB structure exists",
        inst,
    );

    // Representability: perturbed operators and diamond closure.
    let mat2 = make_assoc_mat(2)?;
    let q = mat_element(&diag(&[1, 0]));
    let (left, _) = mult_operators(&mat2, &q)?;
    let m = MybAlgebra::new_unchecked(make_gl(2)?, left, full);
    rows.asserts(
        "perturbed-myb",
        "R + lambda [ad z, R] is mYB for every z",
        "mat(2), left diag(1,0)",
        check_corollary(&m, lambdas, full)?,
    );
    let units: Vec<BracketMap> = (0..4)
        .map(|u| sandwich_bracket(&mat2, &Element::basis(u)))
        .collect::<Result<_>>()?;
    rows.push(
        "diamond-closure",
        "family closed under the diamond product (necessary for representability)",
        "mat(2), xAy - yAx over matrix units",
        None,
        check_family_closure(&BracketFamily::new(units)?, full)?,
    );
    let so3_sandwich = make_example2(3, &diag(&[1, 2, 3]))?
        .so_pencil
        .direction()
        .clone();
    rows.push(
        "diamond-closure",
        "family closed under the diamond product (necessary for representability)",
        "so(3), {commutator, XQY - YQX}, Q = diag(1,2,3)",
        None,
        check_family_closure(&BracketFamily::new(vec![so3.clone(), so3_sandwich])?, full)?,
    );
    rows.not_checked(
        "isotopic-pair",
        "closed families carry an isotopic pair structure",
        "any family",
    );
    rows.not_checked(
        "tangent-relations-unknown",
        "relations between a bracket and its tangent bracket form no submanifold",
        "general",
    );
    rows.asserts(
        "tangent-equal-sandwich",
        "tangent of left multiplication equals xQy - yQx",
        "mat(2), Q = diag(1,0)",
        check_equal_brackets(
            "tangent = sandwich",
            &tangent_bracket(m.algebra(), m.operator())?,
            &sandwich_bracket(&mat2, &q)?,
            full,
        )?,
    );

    Ok(ClaimsMatrix {
        config: config.clone(),
        rows: rows.0,
    })
}
