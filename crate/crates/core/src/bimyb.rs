//! Associative algebras, their commutator brackets and multiplication
//! operators, and bi-mYB structures built from pairs of operators.

use crate::bunch::{check_compatible, check_myb, tangent_bracket, tangent_eval};
use crate::error::{Error, Result};
use crate::liecore::{
    check_commute, check_equal_brackets, check_jacobi, is_derivation, op_polynomial, sweep_pairs,
    validate_index, BasisIndex, BasisKind, BracketMap, CheckReport, Element, LinearOperator,
    Window,
};
use crate::ratlin::{format_polynomial, rat, Matrix, Rational, SparseTensor3};

/// Finite-dimensional associative algebra given by its product constants
/// `b_i b_j = sum_k a_ij^k b_k`, verified associative at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssocAlgebra {
    label: String,
    product: SparseTensor3,
    unit: Option<Element>,
}

impl AssocAlgebra {
    pub fn new(
        label: impl Into<String>,
        product: SparseTensor3,
        unit: Option<Element>,
    ) -> Result<Self> {
        let a = Self {
            label: label.into(),
            product,
            unit,
        };
        let n = a.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = a.basis_mul(i, j);
                for k in 0..n {
                    let lhs = a.mul(&ij, &Element::basis(k as BasisIndex))?;
                    let rhs = a.mul(&Element::basis(i as BasisIndex), &a.basis_mul(j, k))?;
                    if lhs != rhs {
                        return Err(Error::NotAssociative {
                            triple: (i, j, k),
                            lhs,
                            rhs,
                        });
                    }
                }
            }
        }
        if let Some(u) = &a.unit {
            a.validate(u)?;
            for i in 0..n {
                let b = Element::basis(i as BasisIndex);
                if a.mul(u, &b)? != b || a.mul(&b, u)? != b {
                    return Err(Error::BadUnit { index: i });
                }
            }
        }
        Ok(a)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dim(&self) -> usize {
        self.product.dim()
    }

    pub fn product(&self) -> &SparseTensor3 {
        &self.product
    }

    pub fn unit(&self) -> Option<&Element> {
        self.unit.as_ref()
    }

    fn validate(&self, x: &Element) -> Result<()> {
        x.support()
            .try_for_each(|i| validate_index(BasisKind::Finite(self.dim()), i))
    }

    fn basis_mul(&self, i: usize, j: usize) -> Element {
        Element::from_terms(
            self.product
                .slice(i, j)
                .map(|(k, c)| (k as BasisIndex, c.clone())),
        )
    }

    pub fn mul(&self, x: &Element, y: &Element) -> Result<Element> {
        self.validate(x)?;
        self.validate(y)?;
        let mut out = Element::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                out.add_scaled(&self.basis_mul(i as usize, j as usize), &(a * b));
            }
        }
        Ok(out)
    }

    /// `x y - y x`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        Ok(self.mul(x, y)? - self.mul(y, x)?)
    }
}

/// Bracket `[x, y] = xy - yx`.
pub fn commutator_algebra(a: &AssocAlgebra) -> Result<BracketMap> {
    let n = a.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for (k, c) in a
                .commutator(
                    &Element::basis(i as BasisIndex),
                    &Element::basis(j as BasisIndex),
                )?
                .terms()
            {
                entries.push((i, j, k as usize, c.clone()));
            }
        }
    }
    BracketMap::from_structure_constants(format!("comm({})", a.label), n, entries)
}

/// Left and right multiplication `x -> Qx`, `x -> xQ`.
pub fn mult_operators(a: &AssocAlgebra, q: &Element) -> Result<(LinearOperator, LinearOperator)> {
    let n = a.dim();
    let column = |left: bool, j: usize| -> Result<Vec<Rational>> {
        let b = Element::basis(j as BasisIndex);
        let v = if left { a.mul(q, &b)? } else { a.mul(&b, q)? };
        Ok(v.to_coords(n))
    };
    let build = |left: bool| -> Result<LinearOperator> {
        let cols = (0..n)
            .map(|j| column(left, j))
            .collect::<Result<Vec<_>>>()?;
        LinearOperator::dense(Matrix::from_columns(&cols, n)?)
    };
    Ok((build(true)?, build(false)?))
}

/// Bracket `xQy - yQx`.
pub fn sandwich_bracket(a: &AssocAlgebra, q: &Element) -> Result<BracketMap> {
    a.validate(q)?;
    let (alg, q) = (a.clone(), q.clone());
    BracketMap::from_rule(
        format!("sandwich({})", a.label),
        BasisKind::Finite(a.dim()),
        false,
        0,
        move |i, j| {
            let (x, y) = (Element::basis(i), Element::basis(j));
            Ok(alg.mul(&alg.mul(&x, &q)?, &y)? - alg.mul(&alg.mul(&y, &q)?, &x)?)
        },
    )
}

/// Both multiplication operators are mYB for the commutator bracket, with
/// tangent brackets equal to `xQy - yQx`.
pub fn check_prop4(a: &AssocAlgebra, q: &Element, window: Window) -> Result<CheckReport> {
    let br = commutator_algebra(a)?;
    let (left, right) = mult_operators(a, q)?;
    let sandwich = sandwich_bracket(a, q)?;
    let parts = vec![
        check_myb(&br, &left, window)?.renamed("myb (left multiplication)"),
        check_myb(&br, &right, window)?.renamed("myb (right multiplication)"),
        check_equal_brackets(
            "tangent (left) = xQy - yQx",
            &tangent_bracket(&br, &left)?,
            &sandwich,
            window,
        )?,
        check_equal_brackets(
            "tangent (right) = xQy - yQx",
            &tangent_bracket(&br, &right)?,
            &sandwich,
            window,
        )?,
    ];
    Ok(CheckReport::all_of(
        "multiplication operators are mYB",
        parts,
    ))
}

/// Lie algebra with two operators intended to form a bi-mYB structure.
#[derive(Clone, Debug)]
pub struct BiMyb {
    pub algebra: BracketMap,
    pub r1: LinearOperator,
    pub r2: LinearOperator,
}

impl BiMyb {
    pub fn new(algebra: BracketMap, r1: LinearOperator, r2: LinearOperator) -> Self {
        Self { algebra, r1, r2 }
    }

    /// `(comm(A), R^r_Q, R^l_Q)`.
    pub fn from_assoc(a: &AssocAlgebra, q: &Element) -> Result<Self> {
        let (left, right) = mult_operators(a, q)?;
        Ok(Self::new(commutator_algebra(a)?, right, left))
    }

    /// `(algebra, f(R1), f(R2))`.
    pub fn map_polynomial(&self, coeffs: &[Rational]) -> Result<Self> {
        Ok(Self::new(
            self.algebra.clone(),
            op_polynomial(coeffs, &self.r1)?,
            op_polynomial(coeffs, &self.r2)?,
        ))
    }

    /// `R2 - R1`.
    pub fn xi(&self) -> Result<LinearOperator> {
        self.r2.sub(&self.r1)
    }
}

/// Commuting operators, each mYB, with identical tangent brackets.
pub fn check_bimyb(b: &BiMyb, window: Window) -> Result<CheckReport> {
    let idx = b.algebra.indices(window);
    let parts = vec![
        check_commute("operators commute", &b.r1, &b.r2, &idx)?,
        check_myb(&b.algebra, &b.r1, window)?.renamed("myb (R1)"),
        check_myb(&b.algebra, &b.r2, window)?.renamed("myb (R2)"),
        check_equal_brackets(
            "identical tangent brackets",
            &tangent_bracket(&b.algebra, &b.r1)?,
            &tangent_bracket(&b.algebra, &b.r2)?,
            window,
        )?,
    ];
    Ok(CheckReport::all_of("bi-myb", parts))
}

/// `R1 - R2` is a derivation of the bracket.
pub fn check_remark4(b: &BiMyb, window: Window) -> Result<CheckReport> {
    let diff = b.r1.sub(&b.r2)?;
    Ok(
        is_derivation(&diff, &b.algebra, window)?
            .renamed("difference of operators is a derivation"),
    )
}

/// Given `xi`: it is a derivation commuting with `R`, and
/// `[xi x, xi y] = [Sx, y] + [x, Sy] - S[x, y]` with `S = R xi`.
pub fn check_remark5(
    algebra: &BracketMap,
    r: &LinearOperator,
    xi: &LinearOperator,
    window: Window,
) -> Result<CheckReport> {
    let s = r.compose(xi)?;
    let idx = algebra.indices(window);
    let identity = sweep_pairs("[xi x, xi y] = tangent bracket of R xi", &idx, |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let lhs = algebra.bracket(&xi.apply(&x)?, &xi.apply(&y)?)?;
        Ok((lhs, tangent_eval(algebra, &s, &x, &y)?))
    })?;
    let parts = vec![
        is_derivation(xi, algebra, window)?.renamed("xi is a derivation"),
        check_commute("xi commutes with R", xi, r, &idx)?,
        identity,
    ];
    Ok(CheckReport::all_of(
        "derivation splitting of a bi-myb pair",
        parts,
    ))
}

/// `[x, y]^q = [R^r x, R^l y] + [R^l x, R^r y] - R^r R^l [x, y]` over the
/// commutator bracket.
pub fn q_bracket(a: &AssocAlgebra, q: &Element) -> Result<BracketMap> {
    let br = commutator_algebra(a)?;
    let (left, right) = mult_operators(a, q)?;
    let rl = right.compose(&left)?;
    let label = format!("q({})", a.label);
    BracketMap::from_rule(label, br.kind(), false, 0, move |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let mut v = br.bracket(&right.apply(&x)?, &left.apply(&y)?)?
            + br.bracket(&left.apply(&x)?, &right.apply(&y)?)?;
        v = v - rl.apply(&br.basis_bracket(i, j)?)?;
        Ok(v)
    })
}

/// The q-bracket is Lie, equals the tangent brackets of both squared
/// operators, and is compatible with the bracket and both tangent brackets.
pub fn check_remark6(a: &AssocAlgebra, q: &Element, window: Window) -> Result<CheckReport> {
    let br = commutator_algebra(a)?;
    let (left, right) = mult_operators(a, q)?;
    let qb = q_bracket(a, q)?;
    let t1 = tangent_bracket(&br, &right)?;
    let t2 = tangent_bracket(&br, &left)?;
    let parts = vec![
        check_jacobi(&qb, window)?.renamed("jacobi (q-bracket)"),
        check_equal_brackets(
            "q-bracket = tangent of R1^2",
            &qb,
            &tangent_bracket(&br, &right.pow(2)?)?,
            window,
        )?,
        check_equal_brackets(
            "q-bracket = tangent of R2^2",
            &qb,
            &tangent_bracket(&br, &left.pow(2)?)?,
            window,
        )?,
        check_compatible(&qb, &br, window)?.renamed("compatible with bracket"),
        check_compatible(&qb, &t1, window)?.renamed("compatible with tangent of R1"),
        check_compatible(&qb, &t2, window)?.renamed("compatible with tangent of R2"),
    ];
    Ok(CheckReport::all_of("q-bracket", parts))
}

/// Both sides of the mixed identity for the squared operator `s`, each
/// reduced to `lhs - rhs`.
fn even_clause(
    b: &BiMyb,
    s: &LinearOperator,
    x: &Element,
    y: &Element,
    i: BasisIndex,
    j: BasisIndex,
) -> Result<(Element, Element)> {
    let br = &b.algebra;
    let r12 = b.r1.compose(&b.r2)?;
    let lhs = br.bracket(&b.r1.apply(x)?, &b.r2.apply(y)?)?
        + br.bracket(&b.r2.apply(x)?, &b.r1.apply(y)?)?
        - r12.apply(&br.basis_bracket(i, j)?)?;
    let ss = s.compose(s)?;
    let rhs = br.bracket(&ss.apply(x)?, y)? + br.bracket(x, &ss.apply(y)?)?
        - ss.apply(&br.basis_bracket(i, j)?)?;
    Ok((lhs, rhs))
}

/// Even-tempered identity for `R1` (gating), its reformulation in terms of
/// `R = R1`, `xi = R2 - R1` (gating), their tuplewise agreement (gating), and
/// the companion identity for `R2` (reported only).
pub fn check_even_tempered(b: &BiMyb, window: Window) -> Result<CheckReport> {
    let br = &b.algebra;
    let idx = br.indices(window);
    let first = sweep_pairs("even-tempered (R1)", &idx, |i, j| {
        even_clause(b, &b.r1, &Element::basis(i), &Element::basis(j), i, j)
    })?;
    let r = &b.r1;
    let xi = b.xi()?;
    let rxi = r.compose(&xi)?;
    let r2 = r.compose(r)?;
    let reform = |i: BasisIndex, j: BasisIndex| -> Result<(Element, Element)> {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let lhs = br.bracket(&r.apply(&x)?, &xi.apply(&y)?)?
            + br.bracket(&xi.apply(&x)?, &r.apply(&y)?)?
            - rxi.apply(&br.basis_bracket(i, j)?)?;
        let mut rhs = br.bracket(&r2.apply(&x)?, &y)? + br.bracket(&x, &r2.apply(&y)?)?;
        rhs.add_scaled(&br.bracket(&r.apply(&x)?, &r.apply(&y)?)?, &rat(-2));
        Ok((lhs, rhs))
    };
    let second_form = sweep_pairs("even-tempered (R, xi form)", &idx, reform)?;
    let agreement = sweep_pairs("forms agree tuplewise", &idx, |i, j| {
        let (a, b1) = even_clause(b, &b.r1, &Element::basis(i), &Element::basis(j), i, j)?;
        let (c, d) = reform(i, j)?;
        Ok((a - b1, c - d))
    })?;
    let mut report = CheckReport::all_of("even-tempered", vec![first, second_form, agreement]);
    report.push_note_clause(sweep_pairs(
        "even-tempered (R2, cross-check)",
        &idx,
        |i, j| even_clause(b, &b.r2, &Element::basis(i), &Element::basis(j), i, j),
    )?);
    Ok(report)
}

/// Bi-mYB structure is preserved by each polynomial in `polys`.
pub fn check_polynomial_stability(
    b: &BiMyb,
    polys: &[Vec<Rational>],
    window: Window,
) -> Result<CheckReport> {
    let parts = polys
        .iter()
        .map(|f| {
            let name = format!("bi-myb under f = {}", format_polynomial(f));
            Ok(check_bimyb(&b.map_polynomial(f)?, window)?.renamed(&name))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::all_of(
        "polynomial images of a bi-myb pair",
        parts,
    ))
}
