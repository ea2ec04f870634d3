use crate::bimyb::{commutator_algebra, mult_operators, sandwich_bracket, AssocAlgebra};
use crate::bunch::{tangent_bracket, Pencil};
use crate::error::{Error, Result};
use crate::liecore::{
    check_antisymmetry, check_jacobi, sweep_pairs, BasisIndex, BasisKind, BracketMap, CheckReport,
    Element, LinearOperator, Window,
};
use crate::ratlin::{frac, rat, span_membership, Matrix, Rational, SparseTensor3};
use crate::rep::BunchRepresentation;

/// `E_ab`, the `n x n` matrix unit.
pub fn matrix_unit(n: usize, a: usize, b: usize) -> Matrix {
    Matrix::from_fn(n, n, |i, j| rat((i == a && j == b) as i64))
}

/// Coordinates of `m` in the matrix-unit basis (index `a*n + b`).
pub fn mat_element(m: &Matrix) -> Element {
    Element::from_coords(m.entries())
}

/// Matrix with the given matrix-unit coordinates.
pub fn element_matrix(n: usize, x: &Element) -> Result<Matrix> {
    if let Some(i) = x.support().find(|&i| i < 0 || i as usize >= n * n) {
        return Err(Error::IndexOutOfRange {
            index: i,
            dim: n * n,
        });
    }
    Ok(Matrix::from_fn(n, n, |a, b| {
        x.coeff((a * n + b) as BasisIndex)
    }))
}

/// Lie bracket on the span of `basis` given by a matrix bilinear map, with
/// outputs expressed back in `basis`. Fails if the span is not closed.
pub fn matrix_bracket<F>(label: &str, basis: &[Matrix], f: F) -> Result<BracketMap>
where
    F: Fn(&Matrix, &Matrix) -> Result<Matrix>,
{
    let vectors: Vec<Vec<Rational>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let mut entries = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let v = f(&basis[i], &basis[j])?;
            let coords = span_membership(&vectors, v.entries())?.ok_or_else(|| {
                Error::Invalid(format!(
                    "{label}: bracket of basis {i}, {j} leaves the span"
                ))
            })?;
            for (k, c) in coords.into_iter().enumerate() {
                entries.push((i, j, k, c));
            }
        }
    }
    BracketMap::from_structure_constants(label, basis.len(), entries)
}

/// Skew-symmetric basis `E_ab - E_ba`, `a < b`, in lexicographic order.
pub fn so_basis(n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            out.push(
                matrix_unit(n, a, b)
                    .sub(&matrix_unit(n, b, a))
                    .expect("same shape"),
            );
        }
    }
    out
}

fn gate_lie(br: BracketMap, window: Window) -> Result<BracketMap> {
    for report in [check_antisymmetry(&br, window)?, check_jacobi(&br, window)?] {
        if !report.holds {
            return Err(Error::GateFailed(Box::new(report)));
        }
    }
    Ok(br)
}

/// `so(n)` with the matrix commutator on the basis `E_ab - E_ba`, `a < b`.
pub fn make_so(n: usize) -> Result<BracketMap> {
    if n < 2 {
        return Err(Error::Invalid(format!("so(n) needs n >= 2, got {n}")));
    }
    let br = matrix_bracket(&format!("so({n})"), &so_basis(n), |x, y| x.commutator(y))?;
    gate_lie(br, Window::Full)
}

/// `n x n` matrices on the basis `E_ab` (index `a*n + b`) with unit `sum E_aa`.
pub fn make_assoc_mat(n: usize) -> Result<AssocAlgebra> {
    if n < 1 {
        return Err(Error::Invalid("matrix algebra needs n >= 1".into()));
    }
    let dim = n * n;
    let mut product = SparseTensor3::new(dim);
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                product.add(a * n + b, b * n + d, a * n + d, &rat(1))?;
            }
        }
    }
    let unit = Element::from_terms((0..n).map(|a| ((a * n + a) as BasisIndex, rat(1))));
    AssocAlgebra::new(format!("mat({n})"), product, Some(unit))
}

/// The commutator bracket of `n x n` matrices.
pub fn make_gl(n: usize) -> Result<BracketMap> {
    Ok(commutator_algebra(&make_assoc_mat(n)?)?.with_label(format!("gl({n})")))
}

/// The three-dimensional algebra with basis `L_-1, L_0, L_1` (indices 0, 1, 2),
/// its grading operator and its two-dimensional representation.
#[derive(Clone, Debug)]
pub struct Sl2Example {
    pub algebra: BracketMap,
    /// `L_i -> i L_i`.
    pub r: LinearOperator,
    /// Pencil `[.,.] + lambda [.,.]_R` with `Q_R = T(L_0)`.
    pub representation: BunchRepresentation,
}

/// `[L_i, L_j] = (i - j) L_{i+j}` on `i, j in {-1, 0, 1}`.
pub fn make_sl2_bracket() -> Result<BracketMap> {
    let br = BracketMap::from_rule("sl(2)", BasisKind::Finite(3), false, 0, |a, b| {
        let (i, j) = (a - 1, b - 1);
        Ok(if (i + j).abs() <= 1 {
            Element::term(i + j + 1, rat(i - j))
        } else {
            Element::zero()
        })
    })?;
    gate_lie(br, Window::Full)
}

/// Images of `L_-1, L_0, L_1` in the two-dimensional representation.
pub fn sl2_fundamental() -> Vec<Matrix> {
    let m = |rows: [[Rational; 2]; 2]| {
        Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("2x2")
    };
    vec![
        m([[rat(0), rat(-1)], [rat(0), rat(0)]]),
        m([[frac(1, 2), rat(0)], [rat(0), frac(-1, 2)]]),
        m([[rat(0), rat(0)], [rat(1), rat(0)]]),
    ]
}

pub fn make_sl2() -> Result<Sl2Example> {
    let algebra = make_sl2_bracket()?;
    let r = LinearOperator::diagonal(vec![rat(-1), rat(0), rat(1)]);
    let direction = tangent_bracket(&algebra, &r)?;
    // Built directly: the grading operator does not pass the mYB gate.
    let pencil = Pencil::new(algebra.clone(), direction, Some(r.clone()))?;
    let images = sl2_fundamental();
    let q = images[1].clone();
    let representation = BunchRepresentation::new(pencil, images, q)?;
    Ok(Sl2Example {
        algebra,
        r,
        representation,
    })
}

/// `[e_i, e_j] = (i - j) e_{i+j}` with checks enumerating `[-w, w]`.
pub fn make_witt(window: u32) -> Result<BracketMap> {
    if window < 1 {
        return Err(Error::Invalid("Witt window must be at least 1".into()));
    }
    Ok(BracketMap::witt(window))
}

/// `e_i -> e_{i+n}`.
pub fn make_witt_shift(n: i64) -> LinearOperator {
    LinearOperator::shift(n)
}

/// Skew pencil `[X, Y] + lambda (XQY - YQX)` on `so(n)`, the same formula on
/// all of `Mat(n)` with left multiplication by `Q`, and the inclusion.
#[derive(Clone, Debug)]
pub struct Example2 {
    pub n: usize,
    pub q: Matrix,
    pub so_pencil: Pencil,
    pub ambient_pencil: Pencil,
    pub ambient_algebra: AssocAlgebra,
    /// Image of each `so(n)` basis vector in matrix-unit coordinates.
    pub inclusion: Vec<Element>,
    pub warning: Option<String>,
}

pub fn make_example2(n: usize, q: &Matrix) -> Result<Example2> {
    if q.rows() != n || q.cols() != n {
        return Err(Error::Shape(format!(
            "Q is {}x{}, expected {n}x{n}",
            q.rows(),
            q.cols()
        )));
    }
    if !q.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let c = q.get(0, 0).clone();
    let warning = (*q == Matrix::scalar(n, &c))
        .then(|| "Q is scalar; the pencil only rescales the bracket".to_string());
    let basis = so_basis(n);
    let base = make_so(n)?;
    let direction = matrix_bracket(&format!("so({n}) sandwich"), &basis, |x, y| {
        x.mul(q)?.mul(y)?.sub(&y.mul(q)?.mul(x)?)
    })?;
    let so_pencil = Pencil::new(base, direction, None)?;
    let mat = make_assoc_mat(n)?;
    let q_el = mat_element(q);
    let (left, _) = mult_operators(&mat, &q_el)?;
    let ambient_pencil = Pencil::new(
        commutator_algebra(&mat)?,
        sandwich_bracket(&mat, &q_el)?,
        Some(left),
    )?;
    Ok(Example2 {
        n,
        q: q.clone(),
        so_pencil,
        ambient_pencil,
        ambient_algebra: mat,
        inclusion: basis.iter().map(mat_element).collect(),
        warning,
    })
}

/// The ambient pencil evaluated on included skew basis vectors, mapped back
/// through the inclusion, reproduces the skew pencil (base and direction).
pub fn check_restriction(ex: &Example2) -> Result<CheckReport> {
    let incl = &ex.inclusion;
    let idx: Vec<BasisIndex> = (0..incl.len() as BasisIndex).collect();
    let push = |v: &Element| -> Result<Element> {
        let mut out = Element::zero();
        for (k, c) in v.terms() {
            out.add_scaled(&incl[k as usize], c);
        }
        Ok(out)
    };
    let mut parts = Vec::new();
    for (name, small, big) in [
        (
            "restriction (base)",
            ex.so_pencil.base(),
            ex.ambient_pencil.base(),
        ),
        (
            "restriction (direction)",
            ex.so_pencil.direction(),
            ex.ambient_pencil.direction(),
        ),
    ] {
        parts.push(sweep_pairs(name, &idx, |i, j| {
            let ambient = big.bracket(&incl[i as usize], &incl[j as usize])?;
            Ok((ambient, push(&small.basis_bracket(i, j)?)?))
        })?);
    }
    Ok(CheckReport::all_of(
        "so(n) pencil is the restriction of the ambient pencil",
        parts,
    ))
}

/// `diag(entries)` as an `n x n` matrix.
pub fn diag(entries: &[i64]) -> Matrix {
    Matrix::diagonal(&entries.iter().map(|&e| rat(e)).collect::<Vec<_>>())
}

/// `E_12 + E_21 + 2 E_33`, a symmetric non-diagonal `3 x 3` matrix.
pub fn symmetric_offdiag3() -> Matrix {
    diag(&[0, 0, 2])
        .add(&matrix_unit(3, 0, 1))
        .and_then(|m| m.add(&matrix_unit(3, 1, 0)))
        .expect("same shape")
}
