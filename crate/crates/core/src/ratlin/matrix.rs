use std::fmt;

use num_traits::Zero;

use super::rational::{format_rational, one, zero, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals. Shape is fixed at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { one() } else { zero() })
    }

    pub fn scalar(n: usize, c: &Rational) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { c.clone() } else { zero() })
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let n = entries.len();
        Self::from_fn(
            n,
            n,
            |i, j| if i == j { entries[i].clone() } else { zero() },
        )
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged matrix rows".into()));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<Rational>], len: usize) -> Result<Self> {
        if columns.iter().any(|c| c.len() != len) {
            return Err(Error::Shape("columns of unequal length".into()));
        }
        Ok(Self::from_fn(len, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &Matrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Matrix) -> Result<Matrix> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = &a[r][col] / &pivot;
                for c in col..n {
                    let sub = &f * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form in place. Pivot rule: in each column, the first
/// row at or below the current pivot row holding a nonzero entry.
/// Returns the pivot columns.
fn rref(a: &mut [Vec<Rational>], ncols: usize) -> Vec<usize> {
    let m = a.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let pivot = a[r][col].clone();
        for v in a[r].iter_mut() {
            *v /= &pivot;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rank(a: &Matrix) -> usize {
    let mut rows = a.to_rows();
    rref(&mut rows, a.cols()).len()
}

/// Solves `a x = b` exactly. Returns `None` when the system is inconsistent;
/// when it is underdetermined, free variables are set to zero.
pub fn solve_linear(a: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>> {
    if a.rows() != b.len() {
        return Err(Error::Shape(format!(
            "system has {} rows but right-hand side has length {}",
            a.rows(),
            b.len()
        )));
    }
    let n = a.cols();
    let mut aug: Vec<Vec<Rational>> = (0..a.rows())
        .map(|i| {
            let mut row = a.row(i).to_vec();
            row.push(b[i].clone());
            row
        })
        .collect();
    let pivots = rref(&mut aug, n + 1);
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Ok(Some(x))
}

/// Coefficients `c` with `sum c_i v_i = target`, or `None` if the target
/// lies outside the span.
pub fn span_membership(
    vectors: &[Vec<Rational>],
    target: &[Rational],
) -> Result<Option<Vec<Rational>>> {
    if vectors.is_empty() {
        return Ok(target.iter().all(Zero::is_zero).then(Vec::new));
    }
    let a = Matrix::from_columns(vectors, target.len())?;
    solve_linear(&a, target)
}
