use std::collections::BTreeMap;

use num_traits::Zero;

use super::rational::{zero, Rational};
use crate::error::{Error, Result};

/// Sparse order-3 tensor over `[0, dim)^3`; zero coefficients are never stored,
/// so equality of the entry maps is equality of tensors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseTensor3 {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), Rational>,
}

impl SparseTensor3 {
    pub fn new(dim: usize) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, i: usize, j: usize, k: usize) -> Result<()> {
        for idx in [i, j, k] {
            if idx >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx as i64,
                    dim: self.dim,
                });
            }
        }
        Ok(())
    }

    /// Adds `c` to entry `(i, j, k)`, dropping it if the sum vanishes.
    pub fn add(&mut self, i: usize, j: usize, k: usize, c: &Rational) -> Result<()> {
        self.check(i, j, k)?;
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.entries.entry((i, j, k)).or_insert_with(zero);
        *slot += c;
        if slot.is_zero() {
            self.entries.remove(&(i, j, k));
        }
        Ok(())
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        self.entries.get(&(i, j, k)).cloned().unwrap_or_else(zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.entries.iter()
    }

    /// Entries with the given leading pair.
    pub fn slice(&self, i: usize, j: usize) -> impl Iterator<Item = (usize, &Rational)> {
        self.entries
            .range((i, j, 0)..(i, j, usize::MAX))
            .map(|(&(_, _, k), c)| (k, c))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Dense coordinates, index `(i * dim + j) * dim + k`.
    pub fn flatten(&self) -> Vec<Rational> {
        let n = self.dim;
        let mut v = vec![zero(); n * n * n];
        for (&(i, j, k), c) in &self.entries {
            v[(i * n + j) * n + k] = c.clone();
        }
        v
    }
}
