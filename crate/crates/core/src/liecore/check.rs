use std::fmt;

use super::bracket::{BracketMap, Window};
use super::element::{BasisIndex, Element};
use super::operator::LinearOperator;
use crate::error::Result;
use crate::ratlin::Matrix;

/// A tuple on which the two sides of an identity differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    /// Name of the sub-check that produced it, for composite reports.
    pub clause: Option<String>,
    pub indices: Vec<BasisIndex>,
    pub lhs: Element,
    pub rhs: Element,
    pub note: Option<String>,
}

/// Verdict of an identity check over a finite set of tuples.
///
/// `failures` is in enumeration order, so `failures[0]` is the lexicographically
/// first counterexample. Composite checks keep their parts in `clauses`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub identity: String,
    pub holds: bool,
    pub tuples_checked: usize,
    pub failures: Vec<Counterexample>,
    pub clauses: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>) -> Self {
        Self {
            identity: identity.into(),
            holds: true,
            tuples_checked: 0,
            failures: Vec::new(),
            clauses: Vec::new(),
        }
    }

    /// Single-tuple report comparing two already evaluated sides.
    pub fn single(
        identity: impl Into<String>,
        indices: Vec<BasisIndex>,
        lhs: Element,
        rhs: Element,
    ) -> Self {
        let mut r = Self::new(identity);
        r.record(&indices, lhs, rhs);
        r
    }

    /// Report that fails with a single explanatory counterexample.
    pub fn failed(identity: impl Into<String>, cx: Counterexample) -> Self {
        let mut r = Self::new(identity);
        r.tuples_checked = 1;
        r.holds = false;
        r.failures.push(cx);
        r
    }

    /// Conjunction of sub-checks; counterexamples are tagged with the clause.
    pub fn all_of(identity: impl Into<String>, parts: Vec<CheckReport>) -> Self {
        let mut r = Self::new(identity);
        for part in parts {
            r.push_clause(part);
        }
        r
    }

    /// Adds a gating clause.
    pub fn push_clause(&mut self, part: CheckReport) {
        self.tuples_checked += part.tuples_checked;
        self.holds &= part.holds;
        for cx in &part.failures {
            let mut cx = cx.clone();
            cx.clause.get_or_insert_with(|| part.identity.clone());
            self.failures.push(cx);
        }
        self.clauses.push(part);
    }

    /// Adds a clause that is reported but does not affect the verdict.
    pub fn push_note_clause(&mut self, part: CheckReport) {
        self.clauses.push(part);
    }

    pub fn record(&mut self, indices: &[BasisIndex], lhs: Element, rhs: Element) {
        self.tuples_checked += 1;
        if lhs != rhs {
            self.holds = false;
            self.failures.push(Counterexample {
                clause: None,
                indices: indices.to_vec(),
                lhs,
                rhs,
                note: None,
            });
        }
    }

    pub fn renamed(mut self, identity: impl Into<String>) -> Self {
        self.identity = identity.into();
        self
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.failures.first()
    }

    pub fn clause(&self, identity: &str) -> Option<&CheckReport> {
        self.clauses.iter().find(|c| c.identity == identity)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.holds { "holds" } else { "FAILS" };
        write!(
            f,
            "{}: {verdict} ({} tuples)",
            self.identity, self.tuples_checked
        )?;
        if let Some(cx) = self.counterexample() {
            write!(f, "; first counterexample")?;
            if let Some(c) = &cx.clause {
                write!(f, " in {c}")?;
            }
            write!(
                f,
                " at {:?}: lhs = {}, rhs = {}",
                cx.indices, cx.lhs, cx.rhs
            )?;
            if let Some(n) = &cx.note {
                write!(f, " ({n})")?;
            }
        }
        Ok(())
    }
}

/// Evaluates `f` on every ordered pair of `indices`, lexicographically.
pub fn sweep_pairs<F>(
    identity: impl Into<String>,
    indices: &[BasisIndex],
    mut f: F,
) -> Result<CheckReport>
where
    F: FnMut(BasisIndex, BasisIndex) -> Result<(Element, Element)>,
{
    let mut r = CheckReport::new(identity);
    for &i in indices {
        for &j in indices {
            let (lhs, rhs) = f(i, j)?;
            r.record(&[i, j], lhs, rhs);
        }
    }
    Ok(r)
}

/// Evaluates `f` on every ordered triple of `indices`, lexicographically.
pub fn sweep_triples<F>(
    identity: impl Into<String>,
    indices: &[BasisIndex],
    mut f: F,
) -> Result<CheckReport>
where
    F: FnMut(BasisIndex, BasisIndex, BasisIndex) -> Result<(Element, Element)>,
{
    let mut r = CheckReport::new(identity);
    for &i in indices {
        for &j in indices {
            for &k in indices {
                let (lhs, rhs) = f(i, j, k)?;
                r.record(&[i, j, k], lhs, rhs);
            }
        }
    }
    Ok(r)
}

/// `sum over cyclic (x, y, z) of g(x, y, z)`.
pub fn cyclic_sum<F>(i: BasisIndex, j: BasisIndex, k: BasisIndex, mut g: F) -> Result<Element>
where
    F: FnMut(BasisIndex, BasisIndex, BasisIndex) -> Result<Element>,
{
    Ok(g(i, j, k)? + g(j, k, i)? + g(k, i, j)?)
}

/// `[b_i, b_j] = -[b_j, b_i]`.
pub fn check_antisymmetry(br: &BracketMap, window: Window) -> Result<CheckReport> {
    sweep_pairs("antisymmetry", &br.indices(window), |i, j| {
        Ok((br.basis_bracket(i, j)?, -br.basis_bracket(j, i)?))
    })
}

/// `[[b_i, b_j], b_k] + cyclic = 0`.
pub fn check_jacobi(br: &BracketMap, window: Window) -> Result<CheckReport> {
    sweep_triples("jacobi", &br.indices(window), |i, j, k| {
        let lhs = cyclic_sum(i, j, k, |a, b, c| {
            br.bracket(&br.basis_bracket(a, b)?, &Element::basis(c))
        })?;
        Ok((lhs, Element::zero()))
    })
}

/// `R[b_i, b_j] = [R b_i, b_j] + [b_i, R b_j]`.
pub fn is_derivation(r: &LinearOperator, br: &BracketMap, window: Window) -> Result<CheckReport> {
    sweep_pairs("derivation", &br.indices(window), |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let lhs = r.apply(&br.basis_bracket(i, j)?)?;
        let rhs = br.bracket(&r.apply(&x)?, &y)? + br.bracket(&x, &r.apply(&y)?)?;
        Ok((lhs, rhs))
    })
}

/// Coefficient-wise equality of two brackets on the window.
pub fn check_equal_brackets(
    identity: impl Into<String>,
    a: &BracketMap,
    b: &BracketMap,
    window: Window,
) -> Result<CheckReport> {
    a.expect_kind(b.kind())?;
    sweep_pairs(identity, &a.indices(window), |i, j| {
        Ok((a.basis_bracket(i, j)?, b.basis_bracket(i, j)?))
    })
}

/// `A(b_i) = B(b_i)` on the window.
pub fn check_equal_operators(
    identity: impl Into<String>,
    a: &LinearOperator,
    b: &LinearOperator,
    indices: &[BasisIndex],
) -> Result<CheckReport> {
    let mut r = CheckReport::new(identity);
    for &i in indices {
        r.record(&[i], a.apply_basis(i)?, b.apply_basis(i)?);
    }
    Ok(r)
}

/// `AB b_i = BA b_i` on the window.
pub fn check_commute(
    identity: impl Into<String>,
    a: &LinearOperator,
    b: &LinearOperator,
    indices: &[BasisIndex],
) -> Result<CheckReport> {
    let mut r = CheckReport::new(identity);
    for &i in indices {
        let x = Element::basis(i);
        r.record(&[i], a.apply(&b.apply(&x)?)?, b.apply(&a.apply(&x)?)?);
    }
    Ok(r)
}

/// `X -> [Z, X]` on a finite algebra.
pub fn ad(br: &BracketMap, z: &Element) -> Result<LinearOperator> {
    let n = br.dim().ok_or_else(|| {
        crate::error::Error::Unsupported(format!("ad on graded bracket {}", br.label()))
    })?;
    br.validate_element(z)?;
    let columns = (0..n)
        .map(|j| {
            Ok(br
                .bracket(z, &Element::basis(j as BasisIndex))?
                .to_coords(n))
        })
        .collect::<Result<Vec<_>>>()?;
    LinearOperator::dense(Matrix::from_columns(&columns, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liecore::bracket::BasisKind;
    use crate::ratlin::{rat, SparseTensor3};

    #[test]
    fn raw_asymmetric_table_fails_at_first_pair() {
        let mut t = SparseTensor3::new(2);
        t.add(0, 1, 0, &rat(1)).unwrap();
        t.add(1, 0, 0, &rat(1)).unwrap();
        let br = BracketMap::raw("bad", t);
        let r = check_antisymmetry(&br, Window::Full).unwrap();
        assert!(!r.holds);
        assert_eq!(r.counterexample().unwrap().indices, vec![0, 1]);
    }

    #[test]
    fn two_dim_nonabelian_is_lie() {
        let br = BracketMap::from_structure_constants("aff", 2, [(0, 1, 0, rat(1))]).unwrap();
        assert!(check_jacobi(&br, Window::Full).unwrap().holds);
        assert!(check_antisymmetry(&br, Window::Full).unwrap().holds);
    }

    #[test]
    fn witt_structure_on_window() {
        let w = BracketMap::witt(6);
        assert!(check_antisymmetry(&w, Window::Full).unwrap().holds);
        let j = check_jacobi(&w, Window::Full).unwrap();
        assert!(j.holds);
        assert_eq!(j.tuples_checked, 13 * 13 * 13);
    }

    #[test]
    fn witt_shift_is_not_a_derivation() {
        let w = BracketMap::witt(6);
        let r = is_derivation(&LinearOperator::shift(1), &w, Window::Full).unwrap();
        let cx = r.counterexample().unwrap();
        assert_eq!(cx.indices, vec![-6, -5]);
        assert_eq!(cx.lhs, Element::term(-10, rat(-1)));
        assert_eq!(cx.rhs, Element::term(-10, rat(-2)));
    }

    #[test]
    fn zero_operator_and_ad_are_derivations() {
        let br = BracketMap::from_structure_constants("aff", 2, [(0, 1, 0, rat(1))]).unwrap();
        assert!(
            is_derivation(&LinearOperator::zero(), &br, Window::Full)
                .unwrap()
                .holds
        );
        let a = ad(&br, &Element::basis(1)).unwrap();
        assert!(is_derivation(&a, &br, Window::Full).unwrap().holds);
        assert!(ad(&br, &Element::zero())
            .unwrap()
            .to_matrix(2)
            .unwrap()
            .is_zero());
        assert!(ad(&BracketMap::witt(2), &Element::basis(0)).is_err());
        let z = BracketMap::zero(BasisKind::Finite(3), "z");
        assert!(ad(&z, &Element::basis(3)).is_err());
    }

    #[test]
    fn composite_report_tags_clauses() {
        let ok = CheckReport::single("a", vec![0], Element::zero(), Element::zero());
        let bad = CheckReport::single("b", vec![1], Element::basis(0), Element::zero());
        let r = CheckReport::all_of("both", vec![ok, bad]);
        assert!(!r.holds);
        assert_eq!(r.tuples_checked, 2);
        assert_eq!(r.counterexample().unwrap().clause.as_deref(), Some("b"));
    }
}
