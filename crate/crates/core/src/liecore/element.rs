use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::ratlin::{format_rational, is_negative, Rational};

/// Index of a basis vector: a 0-based ordinal for finite algebras, a signed
/// grade for graded (rule) algebras.
pub type BasisIndex = i64;

/// Finite linear combination of basis vectors. Zero coefficients are never
/// stored, so structural equality is equality of vectors.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Element {
    terms: BTreeMap<BasisIndex, Rational>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(i: BasisIndex) -> Self {
        Self::term(i, Rational::one())
    }

    pub fn term(i: BasisIndex, c: Rational) -> Self {
        let mut e = Self::zero();
        e.add_term(i, &c);
        e
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (BasisIndex, Rational)>,
    {
        let mut e = Self::zero();
        for (i, c) in terms {
            e.add_term(i, &c);
        }
        e
    }

    /// Coordinates `v[0..len]` as an element over ordinals `0..len`.
    pub fn from_coords(v: &[Rational]) -> Self {
        Self::from_terms(
            v.iter()
                .cloned()
                .enumerate()
                .map(|(i, c)| (i as BasisIndex, c)),
        )
    }

    pub fn add_term(&mut self, i: BasisIndex, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(i).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&i);
        }
    }

    pub fn add_scaled(&mut self, other: &Element, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (&i, a) in &other.terms {
            self.add_term(i, &(a * c));
        }
    }

    pub fn coeff(&self, i: BasisIndex) -> Rational {
        self.terms.get(&i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (BasisIndex, &Rational)> {
        self.terms.iter().map(|(&i, c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = BasisIndex> + '_ {
        self.terms.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Element {
        let mut out = Element::zero();
        out.add_scaled(self, c);
        out
    }

    /// Dense coordinates over ordinals `0..dim`; indices outside are ignored.
    pub fn to_coords(&self, dim: usize) -> Vec<Rational> {
        (0..dim as BasisIndex).map(|i| self.coeff(i)).collect()
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(self, rhs: Element) -> Element {
        &self + &rhs
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(self, rhs: Element) -> Element {
        &self - &rhs
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-Rational::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, c)) in self.terms().enumerate() {
            let neg = is_negative(c);
            let mag = if neg { -c } else { c.clone() };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag.is_one() {
                write!(f, "e[{i}]")?;
            } else {
                write!(f, "{}*e[{i}]", format_rational(&mag))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
