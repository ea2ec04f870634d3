use std::collections::BTreeMap;

use super::builders::{
    diag, make_assoc_mat, make_example2, make_gl, make_sl2, make_so, make_witt, make_witt_shift,
    mat_element,
};
use crate::bimyb::{sandwich_bracket, AssocAlgebra};
use crate::error::{Error, Result};
use crate::liecore::{BracketMap, Element, LinearOperator};
use crate::ratlin::Matrix;

/// Pencil given by names: `direction` defaults to the tangent bracket of
/// `operator` when absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PencilRefs {
    pub base: String,
    pub direction: Option<String>,
    pub operator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationRefs {
    pub pencil: String,
    pub images: Vec<Matrix>,
    pub q_op: Matrix,
}

/// Named objects, as exported by the catalog and read from input documents.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    pub algebras: BTreeMap<String, BracketMap>,
    pub operators: BTreeMap<String, LinearOperator>,
    pub elements: BTreeMap<String, Element>,
    pub assoc_algebras: BTreeMap<String, AssocAlgebra>,
    pub pencils: BTreeMap<String, PencilRefs>,
    pub representations: BTreeMap<String, RepresentationRefs>,
    pub families: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: &'static str,
    /// Parameters with their defaults, `key=value&...`.
    pub params: &'static str,
    pub produces: &'static str,
    pub description: &'static str,
}

pub const ENTRIES: &[CatalogEntry] = &[
    CatalogEntry {
        name: "so",
        params: "n=3",
        produces: "algebra",
        description: "skew-symmetric n x n matrices, basis E_ab - E_ba (a < b)",
    },
    CatalogEntry {
        name: "gl",
        params: "n=2",
        produces: "algebra",
        description: "commutator bracket of n x n matrices, basis E_ab",
    },
    CatalogEntry {
        name: "mat",
        params: "n=2",
        produces: "associative algebra, algebra, element",
        description: "n x n matrices with unit, their commutator bracket, and Q = diag(1, 0, ..., 0)",
    },
    CatalogEntry {
        name: "sl2",
        params: "",
        produces: "algebra, operator, pencil, representation",
        description: "basis L_-1, L_0, L_1, grading operator, two-dimensional representation with Q_R = T(L_0)",
    },
    CatalogEntry {
        name: "witt",
        params: "W=8&n=1",
        produces: "algebra, operator",
        description: "Witt algebra checked on [-W, W] with the shift e_i -> e_{i+n}",
    },
    CatalogEntry {
        name: "example2",
        params: "n=3",
        produces: "algebras, operator, pencils",
        description: "so(n) pencil [X,Y] + lambda (XQY - YQX), Q = diag(1..n), and the ambient gl(n) pencil",
    },
    CatalogEntry {
        name: "closure",
        params: "",
        produces: "algebras, families",
        description: "xAy - yAx over the matrix units of Mat(2), and {commutator, XQY - YQX} on so(3)",
    },
];

fn parse_params(entry: &CatalogEntry, query: Option<&str>) -> Result<BTreeMap<String, i64>> {
    let mut params = BTreeMap::new();
    let pairs = entry
        .params
        .split('&')
        .chain(query.unwrap_or("").split('&'));
    for (n, pair) in pairs.filter(|p| !p.is_empty()).enumerate() {
        let (k, v) = pair.split_once('=').ok_or_else(|| {
            Error::Invalid(format!("catalog parameter {pair:?} is not key=value"))
        })?;
        let is_default = n < entry.params.split('&').filter(|p| !p.is_empty()).count();
        if !is_default && !params.contains_key(k) {
            return Err(Error::Invalid(format!(
                "catalog entry {} has no parameter {k:?}",
                entry.name
            )));
        }
        let v = v.parse().map_err(|_| {
            Error::Invalid(format!("catalog parameter {k}={v:?} is not an integer"))
        })?;
        params.insert(k.to_string(), v);
    }
    Ok(params)
}

fn count(params: &BTreeMap<String, i64>, key: &str) -> Result<usize> {
    usize::try_from(params[key])
        .map_err(|_| Error::Invalid(format!("parameter {key} must be non-negative")))
}

/// Builds the entry `name?key=value&...`.
pub fn build(spec: &str) -> Result<Bundle> {
    let (name, query) = match spec.split_once('?') {
        Some((n, q)) => (n, Some(q)),
        None => (spec, None),
    };
    let entry = ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::Invalid(format!("unknown catalog entry {name:?}")))?;
    let params = parse_params(entry, query)?;
    let mut b = Bundle::default();
    match name {
        "so" => {
            let n = count(&params, "n")?;
            b.algebras.insert(format!("so{n}"), make_so(n)?);
        }
        "gl" => {
            let n = count(&params, "n")?;
            b.algebras.insert(format!("gl{n}"), make_gl(n)?);
        }
        "mat" => {
            let n = count(&params, "n")?;
            let mut q = vec![0; n];
            if let Some(first) = q.first_mut() {
                *first = 1;
            }
            b.assoc_algebras
                .insert(format!("mat{n}"), make_assoc_mat(n)?);
            b.algebras.insert(format!("gl{n}"), make_gl(n)?);
            b.elements.insert("q".into(), mat_element(&diag(&q)));
        }
        "sl2" => {
            let ex = make_sl2()?;
            b.algebras.insert("sl2".into(), ex.algebra);
            b.operators.insert("R".into(), ex.r);
            b.pencils.insert(
                "sl2_pencil".into(),
                PencilRefs {
                    base: "sl2".into(),
                    direction: None,
                    operator: Some("R".into()),
                },
            );
            b.representations.insert(
                "fundamental".into(),
                RepresentationRefs {
                    pencil: "sl2_pencil".into(),
                    images: ex.representation.images().to_vec(),
                    q_op: ex.representation.q_op().clone(),
                },
            );
        }
        "witt" => {
            let w = u32::try_from(params["W"])
                .map_err(|_| Error::Invalid("W must be a small positive integer".into()))?;
            b.algebras.insert("witt".into(), make_witt(w)?);
            b.operators.insert("R".into(), make_witt_shift(params["n"]));
        }
        "example2" => {
            let n = count(&params, "n")?;
            let q = diag(&(1..=n as i64).collect::<Vec<_>>());
            let ex = make_example2(n, &q)?;
            let so = format!("so{n}");
            let gl = format!("gl{n}");
            b.algebras.insert(so.clone(), ex.so_pencil.base().clone());
            b.algebras
                .insert(format!("{so}_sandwich"), ex.so_pencil.direction().clone());
            b.algebras
                .insert(gl.clone(), ex.ambient_pencil.base().clone());
            b.algebras.insert(
                format!("{gl}_sandwich"),
                ex.ambient_pencil.direction().clone(),
            );
            if let Some(r) = ex.ambient_pencil.operator() {
                b.operators.insert("left_q".into(), r.clone());
            }
            b.pencils.insert(
                format!("{so}_pencil"),
                PencilRefs {
                    base: so.clone(),
                    direction: Some(format!("{so}_sandwich")),
                    operator: None,
                },
            );
            b.pencils.insert(
                "ambient".into(),
                PencilRefs {
                    base: gl.clone(),
                    direction: Some(format!("{gl}_sandwich")),
                    operator: Some("left_q".into()),
                },
            );
        }
        "closure" => {
            let mat2 = make_assoc_mat(2)?;
            let mut units = Vec::new();
            for u in 0..4 {
                let label = format!("unit_sandwich{u}");
                b.algebras
                    .insert(label.clone(), sandwich_bracket(&mat2, &Element::basis(u))?);
                units.push(label);
            }
            b.families.insert("matrix_units".into(), units);
            let ex = make_example2(3, &diag(&[1, 2, 3]))?;
            b.algebras.insert("so3".into(), ex.so_pencil.base().clone());
            b.algebras
                .insert("so3_sandwich".into(), ex.so_pencil.direction().clone());
            b.families
                .insert("so3_pair".into(), vec!["so3".into(), "so3_sandwich".into()]);
        }
        _ => unreachable!("entry table and builder out of sync"),
    }
    Ok(b)
}
