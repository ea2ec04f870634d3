//! Matrix representations of linear pencils, the diamond product of two
//! brackets, span closure of bracket families, and the perturbed-operator
//! criterion for mYB algebras.

use crate::bunch::{check_compatible, check_myb, distinct_samples, MybAlgebra, Pencil};
use crate::error::{Error, Result};
use crate::liecore::{
    ad, check_jacobi, op_commutator, sweep_pairs, BasisIndex, BasisKind, BracketMap, CheckReport,
    Counterexample, Element, Window,
};
use crate::ratlin::{format_rational, frac, one, rat, span_membership, Matrix, Rational};

/// Linear map `T` from a finite pencil into `d x d` matrices together with
/// the operator `Q_R`.
#[derive(Clone, Debug)]
pub struct BunchRepresentation {
    source: Pencil,
    target_dim: usize,
    images: Vec<Matrix>,
    q_op: Matrix,
}

impl BunchRepresentation {
    pub fn new(source: Pencil, images: Vec<Matrix>, q_op: Matrix) -> Result<Self> {
        let BasisKind::Finite(n) = source.kind() else {
            return Err(Error::Unsupported(
                "representation of a graded pencil".into(),
            ));
        };
        if images.len() != n {
            return Err(Error::Shape(format!(
                "{} images for a {n}-dimensional algebra",
                images.len()
            )));
        }
        let d = q_op.rows();
        for (i, m) in images.iter().chain(std::iter::once(&q_op)).enumerate() {
            if m.rows() != d || m.cols() != d {
                let what = if i == n {
                    "Q_R".to_string()
                } else {
                    format!("image {i}")
                };
                return Err(Error::Shape(format!(
                    "{what} is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self {
            source,
            target_dim: d,
            images,
            q_op,
        })
    }

    pub fn source(&self) -> &Pencil {
        &self.source
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn images(&self) -> &[Matrix] {
        &self.images
    }

    pub fn q_op(&self) -> &Matrix {
        &self.q_op
    }

    /// `T(x) = sum x_i T(b_i)`.
    pub fn image(&self, x: &Element) -> Result<Matrix> {
        self.source.base().validate_element(x)?;
        let d = self.target_dim;
        let mut out = Matrix::zeros(d, d);
        for (i, c) in x.terms() {
            out = out.add(&self.images[i as usize].scale(c))?;
        }
        Ok(out)
    }

    /// `T(x) M T(y) - T(y) M T(x)` on basis vectors.
    fn sandwich(&self, i: BasisIndex, j: BasisIndex, m: &Matrix) -> Result<Matrix> {
        let (ti, tj) = (&self.images[i as usize], &self.images[j as usize]);
        ti.mul(m)?.mul(tj)?.sub(&tj.mul(m)?.mul(ti)?)
    }
}

/// Row-major matrix entries as an element over `0..rows*cols`.
pub fn matrix_element(m: &Matrix) -> Element {
    Element::from_coords(m.entries())
}

/// The two lambda-coefficients of `T([x, y]_lambda) = T(x)(1 + lambda Q)T(y) - T(y)(1 + lambda Q)T(x)`:
/// the constant term against the base bracket and the linear term against
/// the direction. Matrices appear in counterexamples flattened row-major.
pub fn check_representation(rep: &BunchRepresentation, window: Window) -> Result<CheckReport> {
    let p = rep.source();
    let idx = p.base().indices(window);
    let id = Matrix::identity(rep.target_dim);
    let constant = sweep_pairs("lambda^0 coefficient", &idx, |i, j| {
        let lhs = rep.image(&p.base().basis_bracket(i, j)?)?;
        Ok((
            matrix_element(&lhs),
            matrix_element(&rep.sandwich(i, j, &id)?),
        ))
    })?;
    let linear = sweep_pairs("lambda^1 coefficient", &idx, |i, j| {
        let lhs = rep.image(&p.direction().basis_bracket(i, j)?)?;
        Ok((
            matrix_element(&lhs),
            matrix_element(&rep.sandwich(i, j, rep.q_op())?),
        ))
    })?;
    Ok(CheckReport::all_of(
        "pencil representation",
        vec![constant, linear],
    ))
}

/// The full representation identity at one value of lambda.
pub fn check_representation_at(
    rep: &BunchRepresentation,
    lambda: &Rational,
    window: Window,
) -> Result<CheckReport> {
    let p = rep.source();
    let d = rep.target_dim;
    let middle = Matrix::identity(d).add(&rep.q_op().scale(lambda))?;
    let name = format!(
        "pencil representation at lambda={}",
        format_rational(lambda)
    );
    sweep_pairs(name, &p.base().indices(window), |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let lhs = rep.image(&p.eval(lambda, &x, &y)?)?;
        Ok((
            matrix_element(&lhs),
            matrix_element(&rep.sandwich(i, j, &middle)?),
        ))
    })
}

/// Rank of the stacked flattened images equals the algebra dimension.
/// A failure reports `{0: rank}` against `{0: dim}`.
pub fn check_faithful(rep: &BunchRepresentation) -> Result<CheckReport> {
    let rows = rep.images.iter().map(|m| m.entries().to_vec()).collect();
    let stacked = if rep.images.is_empty() {
        Matrix::zeros(0, 0)
    } else {
        Matrix::from_rows(rows)?
    };
    let rank = stacked.rank();
    let n = rep.images.len();
    let mut r = CheckReport::single(
        "faithful",
        vec![],
        Element::term(0, rat(rank as i64)),
        Element::term(0, rat(n as i64)),
    );
    if let Some(cx) = r.failures.first_mut() {
        cx.note = Some(format!("image rank {rank} < dimension {n}"));
    }
    Ok(r)
}

/// The diamond product of `alpha` and `beta` at `z`:
/// `1/2 ([[x,z]_a,y]_b + [[x,y]_a,z]_b + [[z,y]_a,x]_b - (a <-> b))`.
pub fn diamond_product(alpha: &BracketMap, beta: &BracketMap, z: &Element) -> Result<BracketMap> {
    let kind = alpha.kind();
    if alpha.dim().is_none() {
        return Err(Error::Unsupported(
            "diamond product on a graded basis".into(),
        ));
    }
    beta.expect_kind(kind)?;
    alpha.validate_element(z)?;
    let (a, b, z) = (alpha.clone(), beta.clone(), z.clone());
    let raw = a.is_raw() || b.is_raw();
    let label = format!("diamond({}, {})", a.label(), b.label());
    BracketMap::from_rule(label, kind, raw, 0, move |i, j| {
        let (x, y) = (Element::basis(i), Element::basis(j));
        let half = |p: &BracketMap, q: &BracketMap| -> Result<Element> {
            Ok(q.bracket(&p.bracket(&x, &z)?, &y)?
                + q.bracket(&p.basis_bracket(i, j)?, &z)?
                + q.bracket(&p.bracket(&z, &y)?, &x)?)
        };
        Ok((half(&a, &b)? - half(&b, &a)?).scale(&frac(1, 2)))
    })
}

/// Spanning set of brackets on a common finite basis.
#[derive(Clone, Debug)]
pub struct BracketFamily {
    members: Vec<BracketMap>,
}

impl BracketFamily {
    pub fn new(members: Vec<BracketMap>) -> Result<Self> {
        let first = members
            .first()
            .ok_or_else(|| Error::Invalid("empty bracket family".into()))?;
        let kind = first.kind();
        if first.dim().is_none() {
            return Err(Error::Unsupported(
                "bracket family on a graded basis".into(),
            ));
        }
        for m in &members {
            m.expect_kind(kind)?;
        }
        Ok(Self { members })
    }

    pub fn members(&self) -> &[BracketMap] {
        &self.members
    }

    pub fn dim(&self) -> usize {
        self.members[0].dim().unwrap_or(0)
    }

    /// Flattened structure tensors of the members.
    pub fn span_vectors(&self) -> Result<Vec<Vec<Rational>>> {
        self.members
            .iter()
            .map(|m| Ok(m.structure_tensor()?.flatten()))
            .collect()
    }

    pub fn span_rank(&self) -> Result<usize> {
        Ok(Matrix::from_rows(self.span_vectors()?)?.rank())
    }
}

/// Members are Lie and pairwise compatible (gating), and every diamond product
/// of an ordered member pair at a basis vector lies in the span of the family.
/// A closure failure at `(alpha, beta, z)` reports the flattened product as
/// `lhs` against `rhs = 0`.
pub fn check_family_closure(fam: &BracketFamily, window: Window) -> Result<CheckReport> {
    let m = fam.members();
    let mut parts = Vec::new();
    for (a, br) in m.iter().enumerate() {
        parts.push(check_jacobi(br, window)?.renamed(format!("jacobi (member {a})")));
        for (b, other) in m.iter().enumerate().skip(a + 1) {
            parts.push(
                check_compatible(br, other, window)?
                    .renamed(format!("compatibility (members {a}, {b})")),
            );
        }
    }
    let span = fam.span_vectors()?;
    let mut closure = CheckReport::new("closed under diamond product");
    let basis = m[0].indices(window);
    for (a, alpha) in m.iter().enumerate() {
        for (b, beta) in m.iter().enumerate() {
            for &z in &basis {
                let v = diamond_product(alpha, beta, &Element::basis(z))?
                    .structure_tensor()?
                    .flatten();
                closure.tuples_checked += 1;
                if span_membership(&span, &v)?.is_none() {
                    closure.holds = false;
                    closure.failures.push(Counterexample {
                        clause: None,
                        indices: vec![a as BasisIndex, b as BasisIndex, z],
                        lhs: Element::from_coords(&v),
                        rhs: Element::zero(),
                        note: Some("diamond product outside the span of the family".into()),
                    });
                }
            }
        }
    }
    parts.push(closure);
    Ok(CheckReport::all_of("family closure", parts))
}

/// Basis vectors followed by the pairwise sums `b_a + b_b`, `a < b`: enough
/// to pin down a quadratic function of `z`.
pub fn polarization_set(dim: usize) -> Vec<Element> {
    let mut zs: Vec<Element> = (0..dim as BasisIndex).map(Element::basis).collect();
    for a in 0..dim as BasisIndex {
        for b in a + 1..dim as BasisIndex {
            zs.push(Element::basis(a) + Element::basis(b));
        }
    }
    zs
}

/// mYB identity for `R' = R + lambda [ad z, R]` at every `z` of the
/// polarization set and every lambda sample; one clause per `(z, lambda)` cell.
pub fn check_corollary(
    m: &MybAlgebra,
    lambdas: &[Rational],
    window: Window,
) -> Result<CheckReport> {
    let lambdas = distinct_samples(lambdas, 3)?;
    let br = m.algebra();
    let n = br
        .dim()
        .ok_or_else(|| Error::Unsupported("perturbation by ad on a graded algebra".into()))?;
    let r = m.operator();
    let mut parts = Vec::new();
    for (zi, z) in polarization_set(n).iter().enumerate() {
        let bracket_term = op_commutator(&ad(br, z)?, r)?;
        for l in &lambdas {
            let perturbed = r.combine(&one(), &bracket_term, l)?;
            let name = format!("z[{zi}] = {z}, lambda = {}", format_rational(l));
            parts.push(check_myb(br, &perturbed, window)?.renamed(name));
        }
    }
    Ok(CheckReport::all_of("perturbed operator is mYB", parts))
}
