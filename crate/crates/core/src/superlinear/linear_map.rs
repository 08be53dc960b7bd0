use alloc::vec::Vec;

use super::{Echelon, SparseVec, SuperSpace, Vector};
use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};

/// Linear map stored column by column: column `j` is the image of basis
/// vector `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap<T: Coeff = Scalar> {
    target_dim: usize,
    cols: Vec<SparseVec<T>>,
}

impl<T: Coeff> LinearMap<T> {
    pub fn zero(source_dim: usize, target_dim: usize) -> Self {
        LinearMap {
            target_dim,
            cols: (0..source_dim).map(|_| SparseVec::zero(target_dim)).collect(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        LinearMap {
            target_dim: dim,
            cols: (0..dim).map(|j| SparseVec::basis(dim, j)).collect(),
        }
    }

    pub fn from_columns(target_dim: usize, cols: Vec<SparseVec<T>>) -> Result<Self> {
        for c in &cols {
            c.check_dim(target_dim)?;
        }
        Ok(LinearMap { target_dim, cols })
    }

    pub fn source_dim(&self) -> usize {
        self.cols.len()
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn column(&self, j: usize) -> &SparseVec<T> {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[SparseVec<T>] {
        &self.cols
    }

    pub fn entry(&self, row: usize, col: usize) -> T {
        self.cols[col].get(row).cloned().unwrap_or_else(T::zero)
    }

    pub fn set(&mut self, row: usize, col: usize, c: T) {
        self.cols[col].set(row, c);
    }

    /// Nonzero entries as `(row, col, value)`, column-major.
    pub fn triples(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.cols
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, x)| (i, j, x)))
    }

    pub fn apply(&self, v: &SparseVec<T>) -> Result<SparseVec<T>> {
        v.check_dim(self.source_dim())?;
        let mut out = SparseVec::zero(self.target_dim);
        for (j, c) in v.iter() {
            out.axpy(c, &self.cols[j]);
        }
        Ok(out)
    }

    /// Image of a constant vector.
    pub fn apply_scalar(&self, v: &Vector) -> Result<SparseVec<T>> {
        v.check_dim(self.source_dim())?;
        let mut out = SparseVec::zero(self.target_dim);
        for (j, c) in v.iter() {
            out.axpy_scalar(c, &self.cols[j]);
        }
        Ok(out)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LinearMap<T>) -> Result<LinearMap<T>> {
        if other.target_dim != self.source_dim() {
            return Err(Error::SpaceMismatch {
                expected: self.source_dim(),
                found: other.target_dim,
            });
        }
        let cols = other.cols.iter().map(|c| self.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(LinearMap {
            target_dim: self.target_dim,
            cols,
        })
    }

    pub fn add(&self, other: &LinearMap<T>) -> LinearMap<T> {
        LinearMap {
            target_dim: self.target_dim,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &LinearMap<T>) -> LinearMap<T> {
        LinearMap {
            target_dim: self.target_dim,
            cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> LinearMap<T> {
        LinearMap {
            target_dim: self.target_dim,
            cols: self.cols.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn map_entries<U: Coeff>(&self, f: impl Fn(&T) -> U) -> LinearMap<U> {
        LinearMap {
            target_dim: self.target_dim,
            cols: self.cols.iter().map(|c| c.map(&f)).collect(),
        }
    }

    /// Checks that every nonzero entry connects basis vectors of equal
    /// parity.
    pub fn check_even(&self, source: &SuperSpace, target: &SuperSpace) -> Result<()> {
        for (i, j, _) in self.triples() {
            if source.parity(j) != target.parity(i) {
                return Err(Error::NotEven { row: i, col: j });
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(SparseVec::is_zero)
    }
}

impl LinearMap<Scalar> {
    pub fn lift<T: Coeff>(&self) -> LinearMap<T> {
        self.map_entries(|c| T::from_scalar(c.clone()))
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.target_dim);
        for c in &self.cols {
            e.insert(c).expect("columns share the target dimension");
        }
        e.rank()
    }

    pub fn is_invertible(&self) -> bool {
        self.source_dim() == self.target_dim && self.rank() == self.target_dim
    }

    pub fn is_identity(&self) -> bool {
        *self == LinearMap::identity(self.target_dim)
    }

    /// `Some(c)` if the map equals `c·id`.
    pub fn scalar_multiple_of_identity(&self) -> Option<Scalar> {
        if self.source_dim() != self.target_dim {
            return None;
        }
        let c = self.entry(0, 0);
        (*self == LinearMap::identity(self.target_dim).scale(&c)).then_some(c)
    }
}
