//! JSON input documents: strict parsing, cross-reference resolution and
//! canonical re-serialization.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bimyb::AssocAlgebra;
use crate::bunch::{tangent_bracket, Pencil};
use crate::catalog::{Bundle, PencilRefs, RepresentationRefs};
use crate::error::Error;
use crate::liecore::{
    op_polynomial, BasisIndex, BracketMap, Composite, Diagonal, Element, LinearOperator,
};
use crate::ratlin::{format_rational, parse_rational, Matrix, Rational, SparseTensor3};
use crate::rep::{BracketFamily, BunchRepresentation};

/// Exact rational in JSON: a `"p/q"` string or a bare integer on input,
/// always a canonical string on output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonRational(pub Rational);

impl Serialize for JsonRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for JsonRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonRational;
            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a rational as \"p/q\" or an integer")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonRational, E> {
                parse_rational(v).map(JsonRational).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonRational, E> {
                Ok(JsonRational(Rational::from_integer(v.into())))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<JsonRational, E> {
                Err(E::custom(format!(
                    "floating-point value {v} is not exact; write it as \"p/q\""
                )))
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub k: i64,
    pub c: JsonRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairEntryDoc {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<TermDoc>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlgebraKind {
    StructureConstants,
    Witt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDoc {
    pub kind: AlgebraKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brackets: Option<Vec<PairEntryDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorKind {
    Matrix,
    Shift,
    Diagonal,
    Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradeDoc {
    pub slope: JsonRational,
    pub intercept: JsonRational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorDoc {
    pub kind: OperatorKind,
    /// `matrix`: rows of the matrix; column `j` is the image of `b_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<JsonRational>>>,
    /// `shift`: `e_i -> scale * e_{i+offset}`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<JsonRational>,
    /// `diagonal`: eigenvalues per basis index, or an affine rule in the grade.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<JsonRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grade: Option<GradeDoc>,
    /// `polynomial`: `a_0 + a_1 R + ...` of the operator named by `of`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<JsonRational>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocDoc {
    pub dim: usize,
    pub products: Vec<PairEntryDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<TermDoc>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilDoc {
    pub base: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepresentationDoc {
    pub pencil: String,
    pub images: Vec<Vec<Vec<JsonRational>>>,
    pub q_op: Vec<Vec<JsonRational>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub algebras: BTreeMap<String, AlgebraDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub operators: BTreeMap<String, OperatorDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub elements: BTreeMap<String, Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub assoc_algebras: BTreeMap<String, AssocDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub pencils: BTreeMap<String, PencilDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representations: BTreeMap<String, RepresentationDoc>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, Vec<String>>,
}

/// Rejection of an input document, with the JSON path of the offending value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InputError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() || self.path == "." {
            write!(f, "{}", self.message)
        } else {
            write!(f, "at {}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for InputError {}

fn bad(path: impl Into<String>, message: impl fmt::Display) -> InputError {
    InputError {
        path: path.into(),
        message: message.to_string(),
    }
}

type Res<T> = Result<T, InputError>;

/// Strict parse: unknown fields, malformed rationals and type errors are
/// rejected with the path of the offending value.
pub fn parse_input(text: &str) -> Res<InputDocument> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| bad(e.path().to_string(), e.inner()))
}

/// Parse and resolve in one step.
pub fn load_bundle(text: &str) -> Res<Bundle> {
    resolve(&parse_input(text)?)
}

fn terms_element(path: &str, terms: &[TermDoc]) -> Res<Element> {
    let mut seen = BTreeSet::new();
    let mut e = Element::zero();
    for (n, t) in terms.iter().enumerate() {
        if !seen.insert(t.k) {
            return Err(bad(
                format!("{path}[{n}].k"),
                format!("duplicate term for basis index {}", t.k),
            ));
        }
        e.add_term(t.k, &t.c.0);
    }
    Ok(e)
}

fn finite_terms(path: &str, terms: &[TermDoc], dim: usize) -> Res<Element> {
    let e = terms_element(path, terms)?;
    if let Some((n, t)) = terms
        .iter()
        .enumerate()
        .find(|(_, t)| t.k < 0 || t.k as usize >= dim)
    {
        return Err(bad(
            format!("{path}[{n}].k"),
            Error::IndexOutOfRange { index: t.k, dim },
        ));
    }
    Ok(e)
}

fn pair_table(
    path: &str,
    entries: &[PairEntryDoc],
    dim: usize,
    ordered: bool,
) -> Res<SparseTensor3> {
    let mut table = SparseTensor3::new(dim);
    let mut seen = BTreeSet::new();
    for (n, e) in entries.iter().enumerate() {
        let p = format!("{path}[{n}]");
        if ordered && e.i >= e.j {
            return Err(bad(&p, Error::UnorderedEntry { i: e.i, j: e.j }));
        }
        for (field, v) in [("i", e.i), ("j", e.j)] {
            if v >= dim {
                return Err(bad(
                    format!("{p}.{field}"),
                    Error::IndexOutOfRange {
                        index: v as i64,
                        dim,
                    },
                ));
            }
        }
        if !seen.insert((e.i, e.j)) {
            return Err(bad(&p, Error::DuplicateEntry { i: e.i, j: e.j }));
        }
        for (k, c) in finite_terms(&format!("{p}.terms"), &e.terms, dim)?.terms() {
            table
                .add(e.i, e.j, k as usize, c)
                .map_err(|err| bad(&p, err))?;
        }
    }
    Ok(table)
}

fn matrix(path: &str, rows: &[Vec<JsonRational>]) -> Res<Matrix> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|q| q.0.clone()).collect())
            .collect(),
    )
    .map_err(|e| bad(path, e))
}

fn unexpected<T>(path: &str, field: &str, value: &Option<T>, kind: &str) -> Res<()> {
    match value {
        Some(_) => Err(bad(
            format!("{path}.{field}"),
            format!("field not allowed for kind {kind:?}"),
        )),
        None => Ok(()),
    }
}

fn required<'a, T>(path: &str, field: &str, value: &'a Option<T>) -> Res<&'a T> {
    value
        .as_ref()
        .ok_or_else(|| bad(path, format!("missing field `{field}`")))
}

fn algebra(path: &str, doc: &AlgebraDoc) -> Res<BracketMap> {
    match doc.kind {
        AlgebraKind::StructureConstants => {
            unexpected(path, "window", &doc.window, "structure_constants")?;
            let dim = *required(path, "dim", &doc.dim)?;
            let brackets = required(path, "brackets", &doc.brackets)?;
            let table = pair_table(&format!("{path}.brackets"), brackets, dim, true)?;
            let entries = table
                .iter()
                .map(|(&(i, j, k), c)| (i, j, k, c.clone()))
                .collect::<Vec<_>>();
            BracketMap::from_structure_constants(
                path.rsplit('.').next().unwrap_or(path),
                dim,
                entries,
            )
            .map_err(|e| bad(path, e))
        }
        AlgebraKind::Witt => {
            unexpected(path, "dim", &doc.dim, "witt")?;
            unexpected(path, "brackets", &doc.brackets, "witt")?;
            let w = doc.window.unwrap_or(crate::liecore::DEFAULT_GRADED_WINDOW);
            crate::catalog::make_witt(w).map_err(|e| bad(format!("{path}.window"), e))
        }
    }
}

fn operator(
    path: &str,
    doc: &OperatorDoc,
    resolved: &BTreeMap<String, LinearOperator>,
) -> Res<LinearOperator> {
    let kind = format!("{:?}", doc.kind).to_lowercase();
    let allowed: &[&str] = match doc.kind {
        OperatorKind::Matrix => &["rows"],
        OperatorKind::Shift => &["offset", "scale"],
        OperatorKind::Diagonal => &["entries", "grade"],
        OperatorKind::Polynomial => &["coeffs", "of"],
    };
    let present = [
        ("rows", doc.rows.is_some()),
        ("offset", doc.offset.is_some()),
        ("scale", doc.scale.is_some()),
        ("entries", doc.entries.is_some()),
        ("grade", doc.grade.is_some()),
        ("coeffs", doc.coeffs.is_some()),
        ("of", doc.of.is_some()),
    ];
    if let Some((field, _)) = present.iter().find(|(f, p)| *p && !allowed.contains(f)) {
        return Err(bad(
            format!("{path}.{field}"),
            format!("field not allowed for kind {kind:?}"),
        ));
    }
    Ok(match doc.kind {
        OperatorKind::Matrix => {
            let m = matrix(&format!("{path}.rows"), required(path, "rows", &doc.rows)?)?;
            LinearOperator::dense(m).map_err(|e| bad(format!("{path}.rows"), e))?
        }
        OperatorKind::Shift => LinearOperator::Shift {
            offset: *required(path, "offset", &doc.offset)?,
            scale: doc
                .scale
                .as_ref()
                .map_or_else(crate::ratlin::one, |s| s.0.clone()),
        },
        OperatorKind::Diagonal => match (&doc.entries, &doc.grade) {
            (Some(e), None) => LinearOperator::diagonal(e.iter().map(|q| q.0.clone()).collect()),
            (None, Some(g)) => {
                LinearOperator::grade_diagonal(g.slope.0.clone(), g.intercept.0.clone())
            }
            _ => {
                return Err(bad(
                    path,
                    "diagonal operator needs exactly one of `entries`, `grade`",
                ))
            }
        },
        OperatorKind::Polynomial => {
            let coeffs: Vec<Rational> = required(path, "coeffs", &doc.coeffs)?
                .iter()
                .map(|q| q.0.clone())
                .collect();
            let of = required(path, "of", &doc.of)?;
            let base = resolved
                .get(of)
                .ok_or_else(|| bad(format!("{path}.of"), format!("unknown operator {of:?}")))?;
            op_polynomial(&coeffs, base).map_err(|e| bad(path, e))?
        }
    })
}

fn resolve_operators(doc: &InputDocument) -> Res<BTreeMap<String, LinearOperator>> {
    let mut out = BTreeMap::new();
    let mut pending: Vec<&String> = doc.operators.keys().collect();
    // Polynomials may refer to other operators; resolve in dependency order.
    while !pending.is_empty() {
        let before = pending.len();
        let mut rest = Vec::new();
        for name in pending {
            let d = &doc.operators[name];
            let ready = d.kind != OperatorKind::Polynomial
                || d.of
                    .as_ref()
                    .is_none_or(|o| out.contains_key(o) || !doc.operators.contains_key(o));
            if ready {
                out.insert(
                    name.clone(),
                    operator(&format!("operators.{name}"), d, &out)?,
                );
            } else {
                rest.push(name);
            }
        }
        if rest.len() == before {
            return Err(bad(
                format!("operators.{}", rest[0]),
                "cyclic polynomial references",
            ));
        }
        pending = rest;
    }
    Ok(out)
}

fn check_ref<T>(path: String, map: &BTreeMap<String, T>, name: &str, what: &str) -> Res<()> {
    if map.contains_key(name) {
        Ok(())
    } else {
        Err(bad(path, format!("unknown {what} {name:?}")))
    }
}

/// Builds every object and checks every cross-reference.
pub fn resolve(doc: &InputDocument) -> Res<Bundle> {
    let mut b = Bundle::default();
    for (name, a) in &doc.algebras {
        b.algebras.insert(
            name.clone(),
            algebra(&format!("algebras.{name}"), a)?.with_label(name.clone()),
        );
    }
    b.operators = resolve_operators(doc)?;
    for (name, terms) in &doc.elements {
        b.elements.insert(
            name.clone(),
            terms_element(&format!("elements.{name}"), terms)?,
        );
    }
    for (name, a) in &doc.assoc_algebras {
        let path = format!("assoc_algebras.{name}");
        let table = pair_table(&format!("{path}.products"), &a.products, a.dim, false)?;
        let unit = a
            .unit
            .as_ref()
            .map(|u| finite_terms(&format!("{path}.unit"), u, a.dim))
            .transpose()?;
        b.assoc_algebras.insert(
            name.clone(),
            AssocAlgebra::new(name.clone(), table, unit).map_err(|e| bad(&path, e))?,
        );
    }
    for (name, p) in &doc.pencils {
        let path = format!("pencils.{name}");
        check_ref(format!("{path}.base"), &b.algebras, &p.base, "algebra")?;
        if let Some(d) = &p.direction {
            check_ref(format!("{path}.direction"), &b.algebras, d, "algebra")?;
        }
        if let Some(o) = &p.operator {
            check_ref(format!("{path}.operator"), &b.operators, o, "operator")?;
        }
        if p.direction.is_none() && p.operator.is_none() {
            return Err(bad(
                &path,
                "pencil needs a `direction`, an `operator`, or both",
            ));
        }
        let refs = PencilRefs {
            base: p.base.clone(),
            direction: p.direction.clone(),
            operator: p.operator.clone(),
        };
        pencil(&b, &refs).map_err(|e| bad(&path, e))?;
        b.pencils.insert(name.clone(), refs);
    }
    for (name, r) in &doc.representations {
        let path = format!("representations.{name}");
        check_ref(format!("{path}.pencil"), &b.pencils, &r.pencil, "pencil")?;
        let images = r
            .images
            .iter()
            .enumerate()
            .map(|(n, m)| matrix(&format!("{path}.images[{n}]"), m))
            .collect::<Res<Vec<_>>>()?;
        let refs = RepresentationRefs {
            pencil: r.pencil.clone(),
            images,
            q_op: matrix(&format!("{path}.q_op"), &r.q_op)?,
        };
        representation(&b, &refs).map_err(|e| bad(&path, e))?;
        b.representations.insert(name.clone(), refs);
    }
    for (name, members) in &doc.families {
        for (n, m) in members.iter().enumerate() {
            check_ref(format!("families.{name}[{n}]"), &b.algebras, m, "algebra")?;
        }
        family(&b, members).map_err(|e| bad(format!("families.{name}"), e))?;
        b.families.insert(name.clone(), members.clone());
    }
    Ok(b)
}

/// Pencil from references; a missing direction is the tangent bracket of the operator.
pub fn pencil(b: &Bundle, refs: &PencilRefs) -> Result<Pencil, Error> {
    let lookup = |n: &str| {
        b.algebras
            .get(n)
            .ok_or_else(|| Error::Invalid(format!("unknown algebra {n:?}")))
    };
    let base = lookup(&refs.base)?.clone();
    let op = refs
        .operator
        .as_ref()
        .map(|o| {
            b.operators
                .get(o)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("unknown operator {o:?}")))
        })
        .transpose()?;
    let direction = match (&refs.direction, &op) {
        (Some(d), _) => lookup(d)?.clone(),
        (None, Some(r)) => tangent_bracket(&base, r)?,
        (None, None) => {
            return Err(Error::Invalid(
                "pencil without direction or operator".into(),
            ))
        }
    };
    Pencil::new(base, direction, op)
}

pub fn representation(b: &Bundle, refs: &RepresentationRefs) -> Result<BunchRepresentation, Error> {
    let p = b
        .pencils
        .get(&refs.pencil)
        .ok_or_else(|| Error::Invalid(format!("unknown pencil {:?}", refs.pencil)))?;
    BunchRepresentation::new(pencil(b, p)?, refs.images.clone(), refs.q_op.clone())
}

pub fn family(b: &Bundle, members: &[String]) -> Result<BracketFamily, Error> {
    let brackets = members
        .iter()
        .map(|m| {
            b.algebras
                .get(m)
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("unknown algebra {m:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BracketFamily::new(brackets)
}

fn rationals(v: &[Rational]) -> Vec<JsonRational> {
    v.iter().cloned().map(JsonRational).collect()
}

fn matrix_rows(m: &Matrix) -> Vec<Vec<JsonRational>> {
    m.to_rows().iter().map(|r| rationals(r)).collect()
}

pub fn element_terms(e: &Element) -> Vec<TermDoc> {
    e.terms()
        .map(|(k, c)| TermDoc {
            k,
            c: JsonRational(c.clone()),
        })
        .collect()
}

fn pair_entries(t: &SparseTensor3) -> Vec<PairEntryDoc> {
    let mut grouped: BTreeMap<(usize, usize), Vec<TermDoc>> = BTreeMap::new();
    for (&(i, j, k), c) in t.iter() {
        grouped.entry((i, j)).or_default().push(TermDoc {
            k: k as BasisIndex,
            c: JsonRational(c.clone()),
        });
    }
    grouped
        .into_iter()
        .map(|((i, j), terms)| PairEntryDoc { i, j, terms })
        .collect()
}

pub fn algebra_doc(br: &BracketMap) -> Result<AlgebraDoc, Error> {
    if br.is_witt() {
        return Ok(AlgebraDoc {
            kind: AlgebraKind::Witt,
            dim: None,
            brackets: None,
            window: Some(br.default_window()),
        });
    }
    let table = br.upper_table().ok_or_else(|| {
        Error::Unsupported(format!(
            "bracket {} has no finite antisymmetric table to serialize",
            br.label()
        ))
    })?;
    Ok(AlgebraDoc {
        kind: AlgebraKind::StructureConstants,
        dim: Some(table.dim()),
        brackets: Some(pair_entries(table)),
        window: None,
    })
}

fn empty_operator(kind: OperatorKind) -> OperatorDoc {
    OperatorDoc {
        kind,
        rows: None,
        offset: None,
        scale: None,
        entries: None,
        grade: None,
        coeffs: None,
        of: None,
    }
}

pub fn operator_doc(op: &LinearOperator) -> Result<OperatorDoc, Error> {
    Ok(match op {
        LinearOperator::Dense(m) => OperatorDoc {
            rows: Some(matrix_rows(m)),
            ..empty_operator(OperatorKind::Matrix)
        },
        LinearOperator::Shift { offset, scale } => OperatorDoc {
            offset: Some(*offset),
            scale: Some(JsonRational(scale.clone())),
            ..empty_operator(OperatorKind::Shift)
        },
        LinearOperator::Diagonal(Diagonal::Entries(e)) => OperatorDoc {
            entries: Some(rationals(e)),
            ..empty_operator(OperatorKind::Diagonal)
        },
        LinearOperator::Diagonal(Diagonal::Affine { slope, intercept }) => OperatorDoc {
            grade: Some(GradeDoc {
                slope: JsonRational(slope.clone()),
                intercept: JsonRational(intercept.clone()),
            }),
            ..empty_operator(OperatorKind::Diagonal)
        },
        LinearOperator::Composite(Composite::Identity) => operator_doc(
            &LinearOperator::grade_diagonal(crate::ratlin::zero(), crate::ratlin::one()),
        )?,
        LinearOperator::Composite(_) => match op.finite_dim() {
            Some(n) => operator_doc(&LinearOperator::Dense(op.to_matrix(n)?))?,
            None => {
                return Err(Error::Unsupported(
                    "composite operator on a graded basis cannot be serialized".into(),
                ))
            }
        },
    })
}

/// Canonical document for a bundle.
pub fn export_document(b: &Bundle) -> Result<InputDocument, Error> {
    let mut doc = InputDocument::default();
    for (name, br) in &b.algebras {
        doc.algebras.insert(name.clone(), algebra_doc(br)?);
    }
    for (name, op) in &b.operators {
        doc.operators.insert(name.clone(), operator_doc(op)?);
    }
    for (name, e) in &b.elements {
        doc.elements.insert(name.clone(), element_terms(e));
    }
    for (name, a) in &b.assoc_algebras {
        doc.assoc_algebras.insert(
            name.clone(),
            AssocDoc {
                dim: a.dim(),
                products: pair_entries(a.product()),
                unit: a.unit().map(element_terms),
            },
        );
    }
    for (name, p) in &b.pencils {
        doc.pencils.insert(
            name.clone(),
            PencilDoc {
                base: p.base.clone(),
                direction: p.direction.clone(),
                operator: p.operator.clone(),
            },
        );
    }
    for (name, r) in &b.representations {
        doc.representations.insert(
            name.clone(),
            RepresentationDoc {
                pencil: r.pencil.clone(),
                images: r.images.iter().map(matrix_rows).collect(),
                q_op: matrix_rows(&r.q_op),
            },
        );
    }
    doc.families = b.families.clone();
    Ok(doc)
}

/// Pretty JSON with a trailing newline.
pub fn to_json(doc: &InputDocument) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("document serializes");
    s.push('\n');
    s
}
