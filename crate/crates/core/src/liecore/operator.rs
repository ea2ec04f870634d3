use num_traits::{One, Zero};

use super::element::{BasisIndex, Element};
use crate::error::{Error, Result};
use crate::ratlin::{one, rat, Matrix, Rational};

/// Eigenvalue rule of a diagonal operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// `b_i -> entries[i] * b_i` on a finite basis.
    Entries(Vec<Rational>),
    /// `e_k -> (slope * k + intercept) * e_k` on any basis.
    Affine {
        slope: Rational,
        intercept: Rational,
    },
}

/// Operators built from other operators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Composite {
    Identity,
    /// `sum c_t * op_t`; the empty sum is the zero operator.
    Sum(Vec<(Rational, LinearOperator)>),
    /// Composition, applied right to left: `[A, B]` is `A o B`.
    Product(Vec<LinearOperator>),
    /// `a_0 + a_1 R + ... + a_n R^n`.
    Polynomial {
        coeffs: Vec<Rational>,
        op: Box<LinearOperator>,
    },
}

/// Endomorphism of the span of an algebra's basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearOperator {
    /// Column `j` holds the coordinates of the image of `b_j`.
    Dense(Matrix),
    /// `e_i -> scale * e_{i + offset}`.
    Shift {
        offset: i64,
        scale: Rational,
    },
    Diagonal(Diagonal),
    Composite(Composite),
}

impl LinearOperator {
    pub fn identity() -> Self {
        Self::Composite(Composite::Identity)
    }

    pub fn zero() -> Self {
        Self::Composite(Composite::Sum(Vec::new()))
    }

    pub fn dense(m: Matrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Shape(format!(
                "operator matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self::Dense(m))
    }

    pub fn shift(offset: i64) -> Self {
        Self::Shift {
            offset,
            scale: one(),
        }
    }

    pub fn diagonal(entries: Vec<Rational>) -> Self {
        Self::Diagonal(Diagonal::Entries(entries))
    }

    pub fn grade_diagonal(slope: Rational, intercept: Rational) -> Self {
        Self::Diagonal(Diagonal::Affine { slope, intercept })
    }

    /// Dimension the operator is tied to, if any.
    pub fn finite_dim(&self) -> Option<usize> {
        match self {
            Self::Dense(m) => Some(m.rows()),
            Self::Diagonal(Diagonal::Entries(e)) => Some(e.len()),
            Self::Shift { .. } | Self::Diagonal(Diagonal::Affine { .. }) => None,
            Self::Composite(c) => match c {
                Composite::Identity => None,
                Composite::Sum(terms) => terms.iter().find_map(|(_, op)| op.finite_dim()),
                Composite::Product(ops) => ops.iter().find_map(LinearOperator::finite_dim),
                Composite::Polynomial { op, .. } => op.finite_dim(),
            },
        }
    }

    pub fn apply_basis(&self, i: BasisIndex) -> Result<Element> {
        self.apply(&Element::basis(i))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match self {
            Self::Dense(m) => {
                let mut out = Element::zero();
                for (j, c) in x.terms() {
                    if j < 0 || j as usize >= m.cols() {
                        return Err(Error::IndexOutOfRange {
                            index: j,
                            dim: m.cols(),
                        });
                    }
                    for i in 0..m.rows() {
                        let a = m.get(i, j as usize);
                        if !a.is_zero() {
                            out.add_term(i as BasisIndex, &(a * c));
                        }
                    }
                }
                Ok(out)
            }
            Self::Shift { offset, scale } => Ok(Element::from_terms(
                x.terms().map(|(i, c)| (i + offset, c * scale)),
            )),
            Self::Diagonal(Diagonal::Entries(e)) => {
                let mut out = Element::zero();
                for (i, c) in x.terms() {
                    let lambda = usize::try_from(i).ok().and_then(|i| e.get(i)).ok_or(
                        Error::IndexOutOfRange {
                            index: i,
                            dim: e.len(),
                        },
                    )?;
                    out.add_term(i, &(lambda * c));
                }
                Ok(out)
            }
            Self::Diagonal(Diagonal::Affine { slope, intercept }) => Ok(Element::from_terms(
                x.terms()
                    .map(|(i, c)| (i, (slope * rat(i) + intercept) * c)),
            )),
            Self::Composite(Composite::Identity) => Ok(x.clone()),
            Self::Composite(Composite::Sum(terms)) => {
                let mut out = Element::zero();
                for (c, op) in terms {
                    out.add_scaled(&op.apply(x)?, c);
                }
                Ok(out)
            }
            Self::Composite(Composite::Product(ops)) => {
                let mut v = x.clone();
                for op in ops.iter().rev() {
                    v = op.apply(&v)?;
                }
                Ok(v)
            }
            Self::Composite(Composite::Polynomial { coeffs, op }) => {
                let mut out = Element::zero();
                let mut power = x.clone();
                for (k, a) in coeffs.iter().enumerate() {
                    if k > 0 {
                        power = op.apply(&power)?;
                    }
                    out.add_scaled(&power, a);
                }
                Ok(out)
            }
        }
    }

    /// Matrix on the basis `0..dim`; fails if an image leaves the basis.
    pub fn to_matrix(&self, dim: usize) -> Result<Matrix> {
        if let Self::Dense(m) = self {
            if m.rows() != dim {
                return Err(Error::Shape(format!(
                    "operator is {0}x{0}, expected {1}x{1}",
                    m.rows(),
                    dim
                )));
            }
            return Ok(m.clone());
        }
        let mut columns = Vec::with_capacity(dim);
        for j in 0..dim {
            let img = self.apply_basis(j as BasisIndex)?;
            if let Some(k) = img.support().find(|&k| k < 0 || k as usize >= dim) {
                return Err(Error::IndexOutOfRange { index: k, dim });
            }
            columns.push(img.to_coords(dim));
        }
        Matrix::from_columns(&columns, dim)
    }

    /// Common dimension of two operators when both can be materialized.
    fn shared_dim(&self, other: &Self) -> Result<Option<usize>> {
        match (self.finite_dim(), other.finite_dim()) {
            (Some(a), Some(b)) if a != b => Err(Error::Shape(format!(
                "operators act on dimensions {a} and {b}"
            ))),
            (Some(n), _) | (_, Some(n)) => Ok(Some(n)),
            (None, None) => Ok(None),
        }
    }

    fn materialize_pair(&self, other: &Self) -> Result<Option<(Matrix, Matrix)>> {
        let Some(n) = self.shared_dim(other)? else {
            return Ok(None);
        };
        match (self.to_matrix(n), other.to_matrix(n)) {
            (Ok(a), Ok(b)) => Ok(Some((a, b))),
            _ => Ok(None),
        }
    }

    /// `self o other`.
    pub fn compose(&self, other: &LinearOperator) -> Result<LinearOperator> {
        if let Some((a, b)) = self.materialize_pair(other)? {
            return Ok(Self::Dense(a.mul(&b)?));
        }
        Ok(Self::Composite(Composite::Product(vec![
            self.clone(),
            other.clone(),
        ])))
    }

    /// `a * self + b * other`.
    pub fn combine(
        &self,
        a: &Rational,
        other: &LinearOperator,
        b: &Rational,
    ) -> Result<LinearOperator> {
        if let Some((x, y)) = self.materialize_pair(other)? {
            return Ok(Self::Dense(x.scale(a).add(&y.scale(b))?));
        }
        Ok(Self::Composite(Composite::Sum(vec![
            (a.clone(), self.clone()),
            (b.clone(), other.clone()),
        ])))
    }

    pub fn add(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.combine(&one(), other, &one())
    }

    pub fn sub(&self, other: &LinearOperator) -> Result<LinearOperator> {
        self.combine(&one(), other, &-one())
    }

    pub fn scale(&self, c: &Rational) -> LinearOperator {
        match self {
            Self::Dense(m) => Self::Dense(m.scale(c)),
            _ => Self::Composite(Composite::Sum(vec![(c.clone(), self.clone())])),
        }
    }

    /// `self^k`, with `self^0` the identity.
    pub fn pow(&self, k: u32) -> Result<LinearOperator> {
        if let Self::Shift { offset, scale } = self {
            if k == 0 {
                return Ok(Self::identity());
            }
            return Ok(Self::Shift {
                offset: offset * i64::from(k),
                scale: num_traits::pow(scale.clone(), k as usize),
            });
        }
        let mut coeffs = vec![Rational::zero(); k as usize + 1];
        coeffs[k as usize] = Rational::one();
        op_polynomial(&coeffs, self)
    }

    /// `Id + lambda * self`.
    pub fn one_plus(&self, lambda: &Rational) -> Result<LinearOperator> {
        op_polynomial(&[one(), lambda.clone()], self)
    }
}

/// `a_0 Id + a_1 R + ... + a_n R^n`. Dense operators are evaluated by Horner's
/// rule on the matrix; anything else becomes a [`Composite::Polynomial`].
pub fn op_polynomial(coeffs: &[Rational], r: &LinearOperator) -> Result<LinearOperator> {
    if let Some(n) = r.finite_dim() {
        if let Ok(m) = r.to_matrix(n) {
            let mut acc = Matrix::zeros(n, n);
            for a in coeffs.iter().rev() {
                acc = acc.mul(&m)?.add(&Matrix::scalar(n, a))?;
            }
            return Ok(LinearOperator::Dense(acc));
        }
    }
    Ok(LinearOperator::Composite(Composite::Polynomial {
        coeffs: coeffs.to_vec(),
        op: Box::new(r.clone()),
    }))
}

/// `AB - BA`; dense whenever both sides can be written as matrices.
pub fn op_commutator(a: &LinearOperator, b: &LinearOperator) -> Result<LinearOperator> {
    if let Some((x, y)) = a.materialize_pair(b)? {
        return Ok(LinearOperator::Dense(x.commutator(&y)?));
    }
    let ab = LinearOperator::Composite(Composite::Product(vec![a.clone(), b.clone()]));
    let ba = LinearOperator::Composite(Composite::Product(vec![b.clone(), a.clone()]));
    Ok(LinearOperator::Composite(Composite::Sum(vec![
        (one(), ab),
        (-one(), ba),
    ])))
}
