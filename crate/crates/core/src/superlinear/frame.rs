use alloc::vec::Vec;

use super::{echelonize, SparseVec, Vector};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// A subspace of an ambient coordinate space with a reduced row-echelon
/// basis. Coordinates are read off at the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    ambient_dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Frame {
    /// Frame of the span of `vectors`.
    pub fn span(ambient_dim: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            v.check_dim(ambient_dim)?;
        }
        let rows = echelonize(vectors)?;
        let pivots = rows.iter().map(|r| r.leading().expect("nonzero row").0).collect();
        Ok(Frame {
            ambient_dim,
            rows,
            pivots,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of an ambient vector; [`Error::NotClosed`] if it lies
    /// outside the subspace.
    pub fn coords<T: Coeff>(&self, v: &SparseVec<T>) -> Result<SparseVec<T>> {
        v.check_dim(self.ambient_dim)?;
        let mut out = SparseVec::zero(self.dim());
        let mut rebuilt = SparseVec::zero(self.ambient_dim);
        for (i, (&p, row)) in self.pivots.iter().zip(&self.rows).enumerate() {
            if let Some(c) = v.get(p) {
                out.set(i, c.clone());
                for (k, s) in row.iter() {
                    rebuilt.add_at(k, &c.scale(s));
                }
            }
        }
        if &rebuilt != v {
            return Err(Error::NotClosed("vector lies outside the subspace".into()));
        }
        Ok(out)
    }

    /// Ambient vector with the given coordinates.
    pub fn embed<T: Coeff>(&self, v: &SparseVec<T>) -> SparseVec<T> {
        let mut out = SparseVec::zero(self.ambient_dim);
        for (i, c) in v.iter() {
            for (k, s) in self.rows[i].iter() {
                out.add_at(k, &c.scale(s));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Scalar;

    #[test]
    fn coordinates_roundtrip_and_reject_outside() {
        let v =
            |e: &[(usize, i64)]| Vector::from_entries(3, e.iter().map(|&(i, c)| (i, Scalar::from_integer(c)))).unwrap();
        let f = Frame::span(3, &[v(&[(0, 1), (1, 1)]), v(&[(1, 2), (2, 2)])]).unwrap();
        assert_eq!(f.dim(), 2);
        let x = v(&[(0, 3), (1, 5), (2, 2)]);
        let c = f.coords(&x).unwrap();
        assert_eq!(f.embed(&c), x);
        assert!(f.coords(&v(&[(2, 1)])).is_err());
    }
}
