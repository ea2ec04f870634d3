//! Pencils of brackets, the tangent and primed brackets of an operator, and
//! the modified Yang-Baxter (mYB) family of checks.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::liecore::{
    check_jacobi, cyclic_sum, sweep_pairs, sweep_triples, BasisIndex, BasisKind, BracketMap,
    CheckReport, Element, LinearOperator, Window,
};
use crate::ratlin::{format_rational, one, rat, Rational};

/// Linear family `[x, y]_lambda = base(x, y) + lambda * direction(x, y)`,
/// optionally with the operator family `R_lambda = Id + lambda * R`.
#[derive(Clone, Debug)]
pub struct Pencil {
    base: BracketMap,
    direction: BracketMap,
    operator: Option<LinearOperator>,
}

impl Pencil {
    pub fn new(
        base: BracketMap,
        direction: BracketMap,
        operator: Option<LinearOperator>,
    ) -> Result<Self> {
        direction.expect_kind(base.kind())?;
        Ok(Self {
            base,
            direction,
            operator,
        })
    }

    /// Pencil through `[.,.]_0 = at_zero` and `[.,.]_1 = at_one`, i.e.
    /// `(1 - lambda) at_zero + lambda at_one`.
    pub fn from_endpoints(
        at_zero: BracketMap,
        at_one: &BracketMap,
        operator: Option<LinearOperator>,
    ) -> Result<Self> {
        let label = format!("{} - {}", at_one.label(), at_zero.label());
        let direction = BracketMap::combine(label, &[(one(), at_one), (-one(), &at_zero)])?;
        Self::new(at_zero, direction, operator)
    }

    pub fn base(&self) -> &BracketMap {
        &self.base
    }

    pub fn direction(&self) -> &BracketMap {
        &self.direction
    }

    pub fn operator(&self) -> Option<&LinearOperator> {
        self.operator.as_ref()
    }

    pub fn kind(&self) -> BasisKind {
        self.base.kind()
    }

    /// `[x, y]_lambda`.
    pub fn eval(&self, lambda: &Rational, x: &Element, y: &Element) -> Result<Element> {
        let mut out = self.base.bracket(x, y)?;
        out.add_scaled(&self.direction.bracket(x, y)?, lambda);
        Ok(out)
    }

    /// The member `[.,.]_lambda` as a standalone bracket.
    pub fn bracket_at(&self, lambda: &Rational) -> Result<BracketMap> {
        let label = format!("{}@{}", self.base.label(), format_rational(lambda));
        BracketMap::combine(
            label,
            &[(one(), &self.base), (lambda.clone(), &self.direction)],
        )
    }

    /// `R_lambda = Id + lambda R`, if the pencil carries an operator.
    pub fn operator_at(&self, lambda: &Rational) -> Option<Result<LinearOperator>> {
        self.operator.as_ref().map(|r| r.one_plus(lambda))
    }
}

/// A Lie algebra with an operator satisfying the mYB identity on `window`.
#[derive(Clone, Debug)]
pub struct MybAlgebra {
    algebra: BracketMap,
    r: LinearOperator,
    window: Window,
}

impl MybAlgebra {
    /// Gates on Jacobi and the mYB identity over `window`.
    pub fn new(algebra: BracketMap, r: LinearOperator, window: Window) -> Result<Self> {
        let jacobi = check_jacobi(&algebra, window)?;
        if !jacobi.holds {
            return Err(Error::GateFailed(Box::new(jacobi)));
        }
        let myb = check_myb(&algebra, &r, window)?;
        if !myb.holds {
            return Err(Error::MybViolated(Box::new(myb)));
        }
        Ok(Self { algebra, r, window })
    }

    /// Pairs an algebra and operator without verification, e.g. to examine an
    /// instance that is claimed but not known to be mYB.
    pub fn new_unchecked(algebra: BracketMap, r: LinearOperator, window: Window) -> Self {
        Self { algebra, r, window }
    }

    pub fn algebra(&self) -> &BracketMap {
        &self.algebra
    }

    pub fn operator(&self) -> &LinearOperator {
        &self.r
    }

    pub fn window(&self) -> Window {
        self.window
    }
}

/// `[Rx, y] + [x, Ry] - R[x, y]` on elements.
pub fn tangent_eval(
    br: &BracketMap,
    r: &LinearOperator,
    x: &Element,
    y: &Element,
) -> Result<Element> {
    Ok(primed_eval(br, r, x, y)? - r.apply(&br.bracket(x, y)?)?)
}

/// `[Rx, y] + [x, Ry]` on elements.
pub fn primed_eval(
    br: &BracketMap,
    r: &LinearOperator,
    x: &Element,
    y: &Element,
) -> Result<Element> {
    Ok(br.bracket(&r.apply(x)?, y)? + br.bracket(x, &r.apply(y)?)?)
}

fn derived(
    label: String,
    br: &BracketMap,
    r: &LinearOperator,
    f: fn(&BracketMap, &LinearOperator, &Element, &Element) -> Result<Element>,
) -> Result<BracketMap> {
    let (b, op) = (br.clone(), r.clone());
    BracketMap::from_rule(
        label,
        br.kind(),
        br.is_raw(),
        br.default_window(),
        move |i, j| f(&b, &op, &Element::basis(i), &Element::basis(j)),
    )
}

/// The tangent bracket `[x, y]_R = [Rx, y] + [x, Ry] - R[x, y]`.
pub fn tangent_bracket(br: &BracketMap, r: &LinearOperator) -> Result<BracketMap> {
    derived(format!("tangent({})", br.label()), br, r, tangent_eval)
}

/// The primed bracket `[x, y]'_R = [Rx, y] + [x, Ry]`.
pub fn primed_bracket(br: &BracketMap, r: &LinearOperator) -> Result<BracketMap> {
    derived(format!("primed({})", br.label()), br, r, primed_eval)
}

/// `[x, y]'_R = [x, y]_R + R[x, y]` on the window.
pub fn check_primed_decomposition(
    br: &BracketMap,
    r: &LinearOperator,
    window: Window,
) -> Result<CheckReport> {
    let primed = primed_bracket(br, r)?;
    let tangent = tangent_bracket(br, r)?;
    sweep_pairs(
        "primed = tangent + R o bracket",
        &br.indices(window),
        |i, j| {
            let rhs = tangent.basis_bracket(i, j)? + r.apply(&br.basis_bracket(i, j)?)?;
            Ok((primed.basis_bracket(i, j)?, rhs))
        },
    )
}

/// `B(x, y) = R[x, y]_R - [Rx, Ry]`.
pub fn defect_eval(
    br: &BracketMap,
    r: &LinearOperator,
    x: &Element,
    y: &Element,
) -> Result<Element> {
    Ok(r.apply(&tangent_eval(br, r, x, y)?)? - br.bracket(&r.apply(x)?, &r.apply(y)?)?)
}

/// `R[Rx, y] + R[x, Ry] - [Rx, Ry] - R^2[x, y]`.
pub fn defect_expanded_eval(
    br: &BracketMap,
    r: &LinearOperator,
    x: &Element,
    y: &Element,
) -> Result<Element> {
    let (rx, ry) = (r.apply(x)?, r.apply(y)?);
    let lhs = r.apply(&br.bracket(&rx, y)?)? + r.apply(&br.bracket(x, &ry)?)?;
    let rhs = br.bracket(&rx, &ry)? + r.apply(&r.apply(&br.bracket(x, y)?)?)?;
    Ok(lhs - rhs)
}

/// Defect `B(b_i, b_j)` in compact form.
pub fn b_defect(
    br: &BracketMap,
    r: &LinearOperator,
    i: BasisIndex,
    j: BasisIndex,
) -> Result<Element> {
    defect_eval(br, r, &Element::basis(i), &Element::basis(j))
}

/// Defect `B(b_i, b_j)` in expanded four-term form.
pub fn b_defect_expanded(
    br: &BracketMap,
    r: &LinearOperator,
    i: BasisIndex,
    j: BasisIndex,
) -> Result<Element> {
    defect_expanded_eval(br, r, &Element::basis(i), &Element::basis(j))
}

/// Compact and expanded forms of the defect agree on the window.
pub fn check_defect_forms(
    br: &BracketMap,
    r: &LinearOperator,
    window: Window,
) -> Result<CheckReport> {
    sweep_pairs("defect compact = expanded", &br.indices(window), |i, j| {
        Ok((b_defect(br, r, i, j)?, b_defect_expanded(br, r, i, j)?))
    })
}

/// `R[Rx, y] + R[x, Ry] = [Rx, Ry] + R^2[x, y]` on basis pairs.
pub fn check_myb(br: &BracketMap, r: &LinearOperator, window: Window) -> Result<CheckReport> {
    sweep_pairs("myb", &br.indices(window), |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let (rx, ry) = (r.apply(&x)?, r.apply(&y)?);
        let lhs = r.apply(&br.bracket(&rx, &y)?)? + r.apply(&br.bracket(&x, &ry)?)?;
        let rhs = br.bracket(&rx, &ry)? + r.apply(&r.apply(&br.basis_bracket(i, j)?)?)?;
        Ok((lhs, rhs))
    })
}

/// Classical normalization `[Rx, Ry] - R[Rx, y] - R[x, Ry] + c[x, y] = 0`.
pub fn check_mcybe_variant(
    br: &BracketMap,
    r: &LinearOperator,
    c: &Rational,
    window: Window,
) -> Result<CheckReport> {
    let name = format!("mcybe(c={})", format_rational(c));
    sweep_pairs(name, &br.indices(window), |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let (rx, ry) = (r.apply(&x)?, r.apply(&y)?);
        let mut lhs = br.bracket(&rx, &ry)?
            - r.apply(&br.bracket(&rx, &y)?)?
            - r.apply(&br.bracket(&x, &ry)?)?;
        lhs.add_scaled(&br.basis_bracket(i, j)?, c);
        Ok((lhs, Element::zero()))
    })
}

/// `[R^2[x, y], z] + cyclic = 0` on basis triples.
pub fn check_primed_lie_condition(
    br: &BracketMap,
    r: &LinearOperator,
    window: Window,
) -> Result<CheckReport> {
    sweep_triples("primed lie condition", &br.indices(window), |i, j, k| {
        let lhs = cyclic_sum(i, j, k, |a, b, c| {
            let r2 = r.apply(&r.apply(&br.basis_bracket(a, b)?)?)?;
            br.bracket(&r2, &Element::basis(c))
        })?;
        Ok((lhs, Element::zero()))
    })
}

/// Mixed Jacobi identity `([[x, y]_1, z]_2 + [[x, y]_2, z]_1) + cyclic = 0`.
pub fn check_compatible(br1: &BracketMap, br2: &BracketMap, window: Window) -> Result<CheckReport> {
    br2.expect_kind(br1.kind())?;
    sweep_triples("compatibility", &br1.indices(window), |i, j, k| {
        let lhs = cyclic_sum(i, j, k, |a, b, c| {
            let z = Element::basis(c);
            Ok(br2.bracket(&br1.basis_bracket(a, b)?, &z)?
                + br1.bracket(&br2.basis_bracket(a, b)?, &z)?)
        })?;
        Ok((lhs, Element::zero()))
    })
}

/// Jacobi criterion for the tangent bracket written through the defect:
/// `([B(x, y), z] + B([x, y], z)) + cyclic = 0`.
///
/// The mYB verdict is attached as a non-gating clause; an instance where the
/// defect vanishes but the criterion fails is reported as an error, since that
/// would mean the evaluation itself is broken.
pub fn check_remark2_criterion(
    br: &BracketMap,
    r: &LinearOperator,
    window: Window,
) -> Result<CheckReport> {
    let mut report = sweep_triples("defect jacobi criterion", &br.indices(window), |i, j, k| {
        let lhs = cyclic_sum(i, j, k, |a, b, c| {
            let z = Element::basis(c);
            Ok(br.bracket(&b_defect(br, r, a, b)?, &z)?
                + defect_eval(br, r, &br.basis_bracket(a, b)?, &z)?)
        })?;
        Ok((lhs, Element::zero()))
    })?;
    let myb = check_myb(br, r, window)?;
    if myb.holds && !report.holds {
        return Err(Error::Invalid(format!(
            "defect vanishes on {} but the criterion fails: {report}",
            br.label()
        )));
    }
    report.push_note_clause(myb);
    Ok(report)
}

/// The linear pencil `[.,.] + lambda [.,.]_R` with homomorphisms `Id + lambda R`.
/// The mYB identity is re-verified; violations refuse the construction.
pub fn make_gamma_bunch(m: &MybAlgebra) -> Result<Pencil> {
    let myb = check_myb(&m.algebra, &m.r, m.window)?;
    if !myb.holds {
        return Err(Error::MybViolated(Box::new(myb)));
    }
    let direction = tangent_bracket(&m.algebra, &m.r)?;
    Pencil::new(m.algebra.clone(), direction, Some(m.r.clone()))
}

/// `R_lambda [x, y]_lambda = [R_lambda x, R_lambda y]_0` at one sample.
pub fn check_gamma_homomorphism_at(
    p: &Pencil,
    lambda: &Rational,
    window: Window,
) -> Result<CheckReport> {
    let r = p
        .operator_at(lambda)
        .ok_or_else(|| Error::Invalid("pencil has no operator family".into()))??;
    let name = format!("gamma homomorphism at lambda={}", format_rational(lambda));
    sweep_pairs(name, &p.base.indices(window), |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let lhs = r.apply(&p.eval(lambda, &x, &y)?)?;
        let rhs = p.base.bracket(&r.apply(&x)?, &r.apply(&y)?)?;
        Ok((lhs, rhs))
    })
}

/// The homomorphism identity at every sample. Both sides are polynomials of
/// degree at most two in lambda, so three distinct samples certify it.
pub fn check_gamma_homomorphism(
    p: &Pencil,
    lambdas: &[Rational],
    window: Window,
) -> Result<CheckReport> {
    let distinct = distinct_samples(lambdas, 3)?;
    let parts = distinct
        .iter()
        .map(|l| check_gamma_homomorphism_at(p, l, window))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::all_of("gamma homomorphism", parts))
}

/// Deduplicated samples in input order; errors if fewer than `needed` remain.
pub(crate) fn distinct_samples(lambdas: &[Rational], needed: usize) -> Result<Vec<Rational>> {
    let mut seen = BTreeSet::new();
    let distinct: Vec<Rational> = lambdas
        .iter()
        .filter(|l| seen.insert((*l).clone()))
        .cloned()
        .collect();
    if distinct.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            found: distinct.len(),
        });
    }
    Ok(distinct)
}

/// Default lambda samples `{0, 1, 2}`.
pub fn default_lambdas() -> Vec<Rational> {
    vec![rat(0), rat(1), rat(2)]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::ad;

    fn witt() -> BracketMap {
        BracketMap::witt(8)
    }

    #[test]
    fn trivial_tangent_brackets() {
        let w = witt();
        let zero = tangent_bracket(&w, &LinearOperator::zero()).unwrap();
        assert!(zero.is_zero_on(Window::Symmetric(4)).unwrap());
        let id = tangent_bracket(&w, &LinearOperator::identity()).unwrap();
        assert_eq!(
            id.basis_bracket(1, 2).unwrap(),
            w.basis_bracket(1, 2).unwrap()
        );
        assert_eq!(
            primed_bracket(&w, &LinearOperator::identity())
                .unwrap()
                .basis_bracket(3, 1)
                .unwrap(),
            Element::term(4, rat(4))
        );
    }

    #[test]
    fn witt_shift_values() {
        let w = witt();
        let r1 = LinearOperator::shift(1);
        assert_eq!(
            tangent_bracket(&w, &r1)
                .unwrap()
                .basis_bracket(1, 2)
                .unwrap(),
            Element::term(4, rat(-1))
        );
        assert_eq!(
            primed_bracket(&w, &r1)
                .unwrap()
                .basis_bracket(1, 2)
                .unwrap(),
            Element::term(4, rat(-2))
        );
        assert!(b_defect(&w, &r1, 1, 2).unwrap().is_zero());
        assert!(
            check_primed_decomposition(&w, &r1, Window::Symmetric(4))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn witt_shift_is_myb_but_not_classical() {
        let w = witt();
        for n in 1..=3 {
            let r = LinearOperator::shift(n);
            assert!(check_myb(&w, &r, Window::Full).unwrap().holds);
            assert!(
                check_primed_lie_condition(&w, &r, Window::Symmetric(4))
                    .unwrap()
                    .holds
            );
            assert!(
                !check_mcybe_variant(&w, &r, &rat(0), Window::Symmetric(3))
                    .unwrap()
                    .holds
            );
        }
    }

    #[test]
    fn identity_operator_is_myb() {
        let w = witt();
        assert!(
            check_myb(&w, &LinearOperator::identity(), Window::Symmetric(4))
                .unwrap()
                .holds
        );
    }

    #[test]
    fn derivation_defect_is_minus_bracket_of_images() {
        let br = BracketMap::from_structure_constants("aff", 2, [(0, 1, 0, rat(1))]).unwrap();
        let r = ad(&br, &Element::basis(1)).unwrap();
        let rx = r.apply_basis(0).unwrap();
        let ry = r.apply_basis(1).unwrap();
        assert_eq!(
            b_defect(&br, &r, 0, 1).unwrap(),
            -br.bracket(&rx, &ry).unwrap()
        );
    }

    #[test]
    fn gamma_requires_three_samples() {
        let w = witt();
        let m = MybAlgebra::new_unchecked(w, LinearOperator::shift(1), Window::Symmetric(3));
        let p = make_gamma_bunch(&m).unwrap();
        assert!(matches!(
            check_gamma_homomorphism(&p, &[rat(0), rat(0), rat(1)], Window::Symmetric(3)),
            Err(Error::InsufficientSamples {
                needed: 3,
                found: 2
            })
        ));
        assert!(
            check_gamma_homomorphism_at(&p, &rat(0), Window::Symmetric(3))
                .unwrap()
                .holds
        );
        assert!(
            check_gamma_homomorphism(&p, &default_lambdas(), Window::Symmetric(6))
                .unwrap()
                .holds
        );
        assert_eq!(
            p.direction().basis_bracket(1, 2).unwrap(),
            Element::term(4, rat(-1))
        );
    }

    #[test]
    fn endpoint_convention() {
        let w = witt();
        let doubled = BracketMap::combine("2w", &[(rat(2), &w)]).unwrap();
        let p = Pencil::from_endpoints(w.clone(), &doubled, None).unwrap();
        assert_eq!(
            p.direction().basis_bracket(2, 1).unwrap(),
            w.basis_bracket(2, 1).unwrap()
        );
        let half = crate::ratlin::frac(1, 2);
        let at = p.bracket_at(&half).unwrap();
        assert_eq!(
            at.basis_bracket(2, 1).unwrap(),
            Element::term(3, crate::ratlin::frac(3, 2))
        );
    }
}
