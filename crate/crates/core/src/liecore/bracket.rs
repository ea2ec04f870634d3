use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::element::{BasisIndex, Element};
use crate::error::{Error, Result};
use crate::ratlin::{rat, Rational, SparseTensor3};

/// Which index set an algebra's basis is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisKind {
    /// Ordinals `0..dim`.
    Finite(usize),
    /// All of the integers (e.g. the Witt basis `e_k`, `k` in Z).
    Graded,
}

/// Basis indices a checker enumerates as *inputs*. Outputs of brackets and
/// operators may leave the window; elements are sparse over all indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Window {
    /// Entire basis for finite algebras; the algebra's default window for
    /// graded ones.
    #[default]
    Full,
    /// `[-w, w]` on graded algebras; the entire basis on finite ones.
    Symmetric(u32),
    /// Inclusive index range, intersected with the basis.
    Range(i64, i64),
}

/// Default enumeration bound for graded algebras.
pub const DEFAULT_GRADED_WINDOW: u32 = 8;

pub type BasisRule = Arc<dyn Fn(BasisIndex, BasisIndex) -> Result<Element> + Send + Sync>;

#[derive(Clone)]
enum Backend {
    /// Structure constants. Unless `raw`, only pairs `i < j` are stored and the
    /// rest follow from antisymmetry.
    Dense { table: SparseTensor3, raw: bool },
    /// `[e_i, e_j] = (i - j) e_{i+j}`.
    Witt { window: u32 },
    /// Bracket on a graded basis given by a basis-pair rule. Rules are pure,
    /// so values are memoized per pair; clones share the cache.
    Rule {
        rule: BasisRule,
        window: u32,
        cache: Arc<Mutex<HashMap<(BasisIndex, BasisIndex), Element>>>,
    },
}

fn rule_backend(rule: BasisRule, window: u32) -> Backend {
    Backend::Rule {
        rule,
        window,
        cache: Arc::default(),
    }
}

/// Bilinear bracket on an indexed basis.
#[derive(Clone)]
pub struct BracketMap {
    label: String,
    backend: Backend,
}

impl fmt::Debug for BracketMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let backend = match &self.backend {
            Backend::Dense { table, raw } => {
                format!("dense(dim={}, nnz={}, raw={raw})", table.dim(), table.nnz())
            }
            Backend::Witt { window } => format!("witt(window={window})"),
            Backend::Rule { window, .. } => format!("rule(window={window})"),
        };
        write!(f, "BracketMap({}, {backend})", self.label)
    }
}

impl BracketMap {
    /// Antisymmetric bracket from constants `c_ij^k` listed for `i < j` only.
    pub fn from_structure_constants<I>(
        label: impl Into<String>,
        dim: usize,
        entries: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, usize, Rational)>,
    {
        let mut table = SparseTensor3::new(dim);
        for (i, j, k, c) in entries {
            if i >= j {
                return Err(Error::UnorderedEntry { i, j });
            }
            table.add(i, j, k, &c)?;
        }
        Ok(Self {
            label: label.into(),
            backend: Backend::Dense { table, raw: false },
        })
    }

    /// Bracket read verbatim from a full table, including pairs `i >= j`.
    /// No antisymmetry is implied; used for negative tests.
    pub fn raw(label: impl Into<String>, table: SparseTensor3) -> Self {
        Self {
            label: label.into(),
            backend: Backend::Dense { table, raw: true },
        }
    }

    pub fn witt(window: u32) -> Self {
        Self {
            label: "witt".into(),
            backend: Backend::Witt { window },
        }
    }

    pub fn zero(kind: BasisKind, label: impl Into<String>) -> Self {
        let backend = match kind {
            BasisKind::Finite(dim) => Backend::Dense {
                table: SparseTensor3::new(dim),
                raw: false,
            },
            BasisKind::Graded => {
                rule_backend(Arc::new(|_, _| Ok(Element::zero())), DEFAULT_GRADED_WINDOW)
            }
        };
        Self {
            label: label.into(),
            backend,
        }
    }

    /// Bracket defined by its values on basis pairs.
    ///
    /// Finite kinds are tabulated eagerly: pairs `i < j` when `raw` is false,
    /// every ordered pair otherwise. Graded kinds keep the rule and evaluate
    /// it lazily.
    pub fn from_rule<F>(
        label: impl Into<String>,
        kind: BasisKind,
        raw: bool,
        window: u32,
        rule: F,
    ) -> Result<Self>
    where
        F: Fn(BasisIndex, BasisIndex) -> Result<Element> + Send + Sync + 'static,
    {
        let backend = match kind {
            BasisKind::Finite(dim) => {
                let mut table = SparseTensor3::new(dim);
                for i in 0..dim {
                    let lo = if raw { 0 } else { i + 1 };
                    for j in lo..dim {
                        for (k, c) in rule(i as BasisIndex, j as BasisIndex)?.terms() {
                            let k = usize::try_from(k)
                                .ok()
                                .filter(|&k| k < dim)
                                .ok_or(Error::IndexOutOfRange { index: k, dim })?;
                            table.add(i, j, k, c)?;
                        }
                    }
                }
                Backend::Dense { table, raw }
            }
            BasisKind::Graded => rule_backend(Arc::new(rule), window),
        };
        Ok(Self {
            label: label.into(),
            backend,
        })
    }

    /// `sum c_t * bracket_t` over brackets of one basis kind.
    pub fn combine(label: impl Into<String>, terms: &[(Rational, &BracketMap)]) -> Result<Self> {
        let Some((_, first)) = terms.first() else {
            return Err(Error::Invalid("empty bracket combination".into()));
        };
        let kind = first.kind();
        for (_, b) in terms {
            b.expect_kind(kind)?;
        }
        let raw = terms.iter().any(|(_, b)| b.is_raw());
        let window = terms
            .iter()
            .map(|(_, b)| b.default_window())
            .max()
            .unwrap_or(DEFAULT_GRADED_WINDOW);
        let owned: Vec<(Rational, BracketMap)> = terms
            .iter()
            .map(|(c, b)| (c.clone(), (*b).clone()))
            .collect();
        Self::from_rule(label, kind, raw, window, move |i, j| {
            let mut out = Element::zero();
            for (c, b) in &owned {
                out.add_scaled(&b.basis_bracket(i, j)?, c);
            }
            Ok(out)
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn kind(&self) -> BasisKind {
        match &self.backend {
            Backend::Dense { table, .. } => BasisKind::Finite(table.dim()),
            Backend::Witt { .. } | Backend::Rule { .. } => BasisKind::Graded,
        }
    }

    pub fn dim(&self) -> Option<usize> {
        match self.kind() {
            BasisKind::Finite(n) => Some(n),
            BasisKind::Graded => None,
        }
    }

    pub fn is_raw(&self) -> bool {
        matches!(self.backend, Backend::Dense { raw: true, .. })
    }

    pub fn is_witt(&self) -> bool {
        matches!(self.backend, Backend::Witt { .. })
    }

    pub fn default_window(&self) -> u32 {
        match &self.backend {
            Backend::Witt { window } | Backend::Rule { window, .. } => *window,
            Backend::Dense { .. } => DEFAULT_GRADED_WINDOW,
        }
    }

    /// Stored constants of a validated dense bracket (pairs `i < j`).
    pub fn upper_table(&self) -> Option<&SparseTensor3> {
        match &self.backend {
            Backend::Dense { table, raw: false } => Some(table),
            _ => None,
        }
    }

    pub(crate) fn expect_kind(&self, kind: BasisKind) -> Result<()> {
        if self.kind() != kind {
            return Err(Error::KindMismatch(format!(
                "bracket {} has basis {:?}, expected {:?}",
                self.label,
                self.kind(),
                kind
            )));
        }
        Ok(())
    }

    pub fn validate_index(&self, i: BasisIndex) -> Result<()> {
        validate_index(self.kind(), i)
    }

    pub fn validate_element(&self, x: &Element) -> Result<()> {
        x.support().try_for_each(|i| self.validate_index(i))
    }

    /// Basis indices enumerated by a checker over `window`.
    pub fn indices(&self, window: Window) -> Vec<BasisIndex> {
        window_indices(self.kind(), self.default_window(), window)
    }

    /// `[b_i, b_j]`.
    pub fn basis_bracket(&self, i: BasisIndex, j: BasisIndex) -> Result<Element> {
        self.validate_index(i)?;
        self.validate_index(j)?;
        match &self.backend {
            Backend::Dense { table, raw } => {
                let (i, j) = (i as usize, j as usize);
                let lookup = |a: usize, b: usize| {
                    Element::from_terms(
                        table.slice(a, b).map(|(k, c)| (k as BasisIndex, c.clone())),
                    )
                };
                Ok(if *raw {
                    lookup(i, j)
                } else if i < j {
                    lookup(i, j)
                } else if i > j {
                    -lookup(j, i)
                } else {
                    Element::zero()
                })
            }
            Backend::Witt { .. } => Ok(Element::term(i + j, rat(i - j))),
            Backend::Rule { rule, cache, .. } => {
                if let Some(v) = cache.lock().expect("bracket cache").get(&(i, j)) {
                    return Ok(v.clone());
                }
                // Not held across the call: rules may evaluate other rule brackets.
                let v = rule(i, j)?;
                cache
                    .lock()
                    .expect("bracket cache")
                    .insert((i, j), v.clone());
                Ok(v)
            }
        }
    }

    /// Bilinear extension of the basis rule.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element> {
        self.validate_element(x)?;
        self.validate_element(y)?;
        let mut out = Element::zero();
        for (i, a) in x.terms() {
            for (j, b) in y.terms() {
                let v = self.basis_bracket(i, j)?;
                if !v.is_zero() {
                    out.add_scaled(&v, &(a * b));
                }
            }
        }
        Ok(out)
    }

    /// Coefficients on every ordered basis pair of a finite algebra.
    pub fn structure_tensor(&self) -> Result<SparseTensor3> {
        let n = self.dim().ok_or_else(|| {
            Error::Unsupported(format!("structure tensor of graded bracket {}", self.label))
        })?;
        let mut t = SparseTensor3::new(n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self
                    .basis_bracket(i as BasisIndex, j as BasisIndex)?
                    .terms()
                {
                    t.add(i, j, k as usize, c)?;
                }
            }
        }
        Ok(t)
    }

    pub fn is_zero_on(&self, window: Window) -> Result<bool> {
        let idx = self.indices(window);
        for &i in &idx {
            for &j in &idx {
                if !self.basis_bracket(i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

pub(crate) fn validate_index(kind: BasisKind, i: BasisIndex) -> Result<()> {
    match kind {
        BasisKind::Finite(dim) if i < 0 || i as usize >= dim => {
            Err(Error::IndexOutOfRange { index: i, dim })
        }
        _ => Ok(()),
    }
}

pub(crate) fn window_indices(kind: BasisKind, default: u32, window: Window) -> Vec<BasisIndex> {
    match (kind, window) {
        (BasisKind::Finite(n), Window::Full | Window::Symmetric(_)) => {
            (0..n as BasisIndex).collect()
        }
        (BasisKind::Finite(n), Window::Range(lo, hi)) => {
            (lo.max(0)..=hi.min(n as BasisIndex - 1)).collect()
        }
        (BasisKind::Graded, Window::Full) => (-(default as i64)..=default as i64).collect(),
        (BasisKind::Graded, Window::Symmetric(w)) => (-(w as i64)..=w as i64).collect(),
        (BasisKind::Graded, Window::Range(lo, hi)) => (lo..=hi).collect(),
    }
}

/// Coefficient-wise equality on all stored entries; convenient in tests.
pub fn same_tensor(a: &BracketMap, b: &BracketMap) -> Result<bool> {
    Ok(a.structure_tensor()? == b.structure_tensor()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::rat;

    #[test]
    fn witt_rule() {
        let w = BracketMap::witt(6);
        assert_eq!(w.basis_bracket(1, 2).unwrap(), Element::term(3, rat(-1)));
        assert_eq!(w.basis_bracket(0, 5).unwrap(), Element::term(5, rat(-5)));
        assert!(w.basis_bracket(4, 4).unwrap().is_zero());
        assert_eq!(w.indices(Window::Full).len(), 13);
    }

    #[test]
    fn dense_antisymmetry_implied() {
        let b = BracketMap::from_structure_constants("a", 2, [(0, 1, 0, rat(1))]).unwrap();
        assert_eq!(b.basis_bracket(1, 0).unwrap(), Element::term(0, rat(-1)));
        assert!(b.basis_bracket(1, 1).unwrap().is_zero());
        assert!(matches!(
            BracketMap::from_structure_constants("a", 2, [(1, 0, 0, rat(1))]),
            Err(Error::UnorderedEntry { .. })
        ));
    }

    #[test]
    fn index_kind_mismatch_is_error() {
        let b = BracketMap::zero(BasisKind::Finite(2), "z");
        assert!(b.bracket(&Element::basis(-1), &Element::basis(0)).is_err());
        assert!(b.bracket(&Element::basis(2), &Element::basis(0)).is_err());
        let w = BracketMap::witt(2);
        assert!(w.bracket(&Element::basis(-100), &Element::basis(7)).is_ok());
    }

    #[test]
    fn combination_of_brackets() {
        let b = BracketMap::from_structure_constants("a", 2, [(0, 1, 0, rat(1))]).unwrap();
        let c = BracketMap::combine("c", &[(rat(2), &b), (rat(-2), &b)]).unwrap();
        assert!(c.structure_tensor().unwrap().is_zero());
        let w = BracketMap::witt(3);
        let ww = BracketMap::combine("2w", &[(rat(2), &w)]).unwrap();
        assert_eq!(ww.basis_bracket(1, 2).unwrap(), Element::term(3, rat(-2)));
        assert!(BracketMap::combine("mix", &[(rat(1), &b), (rat(1), &w)]).is_err());
    }
}
