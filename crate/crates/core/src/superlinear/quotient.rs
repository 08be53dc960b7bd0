use alloc::vec::Vec;

use super::{Echelon, LinearMap, SuperSpace, Vector};
use crate::error::{Error, Result};
use crate::scalars::Coeff;

/// A quotient `ambient / span(ideal)` with the canonical complement: the
/// ambient basis vectors that are not pivots of the echelonized ideal.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: SuperSpace,
    pub ideal_basis: Vec<Vector>,
    pub quotient_space: SuperSpace,
    pub projection: LinearMap,
    pub section: LinearMap,
    /// Ambient index of each quotient basis vector.
    pub kept: Vec<usize>,
}

pub fn quotient_construct(ambient: &SuperSpace, ideal: &[Vector]) -> Result<Quotient> {
    let dim = ambient.dim();
    let mut e = Echelon::new(dim);
    for v in ideal {
        v.check_dim(dim)?;
        if !v.is_zero() && ambient.parity_of(v).is_none() {
            return Err(Error::Grading("ideal vector is not parity-homogeneous".into()));
        }
        e.insert(v)?;
    }
    let kept: Vec<usize> = (0..dim).filter(|&i| !e.is_pivot(i)).collect();
    let mut position = alloc::vec![None; dim];
    for (t, &i) in kept.iter().enumerate() {
        position[i] = Some(t);
    }
    let qdim = kept.len();
    let mut projection = LinearMap::zero(dim, qdim);
    for a in 0..dim {
        let r = e.reduce(&Vector::basis(dim, a));
        for (i, c) in r.iter() {
            projection.set(position[i].expect("reduced vectors avoid pivots"), a, c.clone());
        }
    }
    let mut section = LinearMap::zero(qdim, dim);
    for (t, &i) in kept.iter().enumerate() {
        section.set(i, t, crate::scalars::Scalar::one());
    }
    Ok(Quotient {
        ambient: ambient.clone(),
        ideal_basis: e.into_basis(),
        quotient_space: ambient.restrict(&kept),
        projection,
        section,
        kept,
    })
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn project(&self, v: &Vector) -> Result<Vector> {
        self.projection.apply(v)
    }

    pub fn lift(&self, v: &Vector) -> Result<Vector> {
        self.section.apply(v)
    }

    /// `projection ∘ map ∘ section` for a map on the ambient space that
    /// preserves the ideal; [`Error::DescentFailed`] otherwise.
    pub fn descend<T: Coeff>(&self, map: &LinearMap<T>) -> Result<LinearMap<T>> {
        let dim = self.ambient.dim();
        if map.source_dim() != dim || map.target_dim() != dim {
            return Err(Error::SpaceMismatch {
                expected: dim,
                found: map.source_dim(),
            });
        }
        let proj = self.projection.lift::<T>();
        for v in &self.ideal_basis {
            if !proj.apply(&map.apply_scalar(v)?)?.is_zero() {
                return Err(Error::DescentFailed);
            }
        }
        let cols = self
            .kept
            .iter()
            .map(|&k| proj.apply(map.column(k)))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(self.dim(), cols)
    }
}
