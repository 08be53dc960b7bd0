use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::{SparseVec, Vector};
use crate::error::{Error, Result};
use crate::scalars::{Poly, Scalar};

/// Incrementally maintained reduced row-echelon basis. Rows are keyed by
/// their pivot column and every pivot entry is 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: BTreeMap<usize, Vector>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Echelon {
            dim,
            rows: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn row(&self, pivot: usize) -> Option<&Vector> {
        self.rows.get(&pivot)
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        let hits: Vec<(usize, Scalar)> = v
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .map(|(i, c)| (i, c.clone()))
            .collect();
        // Rows are fully reduced, so subtracting one never touches another
        // pivot column.
        for (p, c) in hits {
            out.axpy_scalar(&-&c, &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns the new pivot column if `v` was
    /// independent.
    pub fn insert(&mut self, v: &Vector) -> Result<Option<usize>> {
        v.check_dim(self.dim)?;
        let r = self.reduce(v);
        let Some((p, lead)) = r.leading() else {
            return Ok(None);
        };
        let r = r.scale(&lead.inv().unwrap());
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                row.axpy_scalar(&-&c, &r);
            }
        }
        self.rows.insert(p, r);
        Ok(Some(p))
    }

    /// Basis rows in increasing pivot order.
    pub fn basis(&self) -> Vec<Vector> {
        self.rows.values().cloned().collect()
    }

    pub fn into_basis(self) -> Vec<Vector> {
        self.rows.into_values().collect()
    }

    /// Coordinates of a member of the span in terms of `basis()`; `None`
    /// if it is not a member.
    pub fn coordinates(&self, v: &Vector) -> Option<Vec<Scalar>> {
        if !self.contains(v) {
            return None;
        }
        Some(
            self.rows
                .keys()
                .map(|p| v.get(*p).cloned().unwrap_or_default())
                .collect(),
        )
    }
}

/// Reduced row-echelon basis of the span of `vectors`.
pub fn echelonize(vectors: &[Vector]) -> Result<Vec<Vector>> {
    let Some(first) = vectors.first() else {
        return Ok(Vec::new());
    };
    let mut e = Echelon::new(first.dim());
    for v in vectors {
        e.insert(v)?;
    }
    Ok(e.into_basis())
}

/// Echelonizes polynomial-valued vectors whose entries are all constant.
pub fn echelonize_symbolic(vectors: &[SparseVec<Poly>]) -> Result<Vec<Vector>> {
    let constant: Result<Vec<Vector>> = vectors
        .iter()
        .map(|v| {
            let mut out = Vector::zero(v.dim());
            for (i, p) in v.iter() {
                out.set(i, p.as_constant().ok_or(Error::UnsupportedSymbolicRank)?);
            }
            Ok(out)
        })
        .collect();
    echelonize(&constant?)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solutions { particular: Vector, kernel: Vec<Vector> },
}

impl LinearSolution {
    pub fn kernel_dim(&self) -> Option<usize> {
        match self {
            LinearSolution::Inconsistent => None,
            LinearSolution::Solutions { kernel, .. } => Some(kernel.len()),
        }
    }
}

/// Solves `row · x = rhs` for every `(row, rhs)` over `nvars` unknowns.
pub fn solve_linear(rows: &[(Vector, Scalar)], nvars: usize) -> Result<LinearSolution> {
    let mut e = Echelon::new(nvars + 1);
    for (row, rhs) in rows {
        row.check_dim(nvars)?;
        let mut aug = Vector::zero(nvars + 1);
        for (i, c) in row.iter() {
            aug.set(i, c.clone());
        }
        aug.set(nvars, rhs.clone());
        if e.insert(&aug)? == Some(nvars) {
            return Ok(LinearSolution::Inconsistent);
        }
    }
    Ok(solution_from_echelon(&e, nvars))
}

pub(crate) fn solution_from_echelon(e: &Echelon, nvars: usize) -> LinearSolution {
    let mut particular = Vector::zero(nvars);
    for p in e.pivots() {
        if let Some(c) = e.row(p).unwrap().get(nvars) {
            particular.set(p, c.clone());
        }
    }
    let mut kernel = Vec::new();
    for f in (0..nvars).filter(|&f| !e.is_pivot(f)) {
        let mut v = Vector::basis(nvars, f);
        for p in e.pivots() {
            if let Some(c) = e.row(p).unwrap().get(f) {
                v.set(p, -c);
            }
        }
        kernel.push(v);
    }
    LinearSolution::Solutions { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[i64]) -> Vector {
        Vector::from_entries(
            entries.len(),
            entries.iter().enumerate().map(|(i, &c)| (i, Scalar::from_integer(c))),
        )
        .unwrap()
    }

    #[test]
    fn echelonize_rank_two() {
        let b = echelonize(&[v(&[1, 1, 0]), v(&[0, 1, 1])]).unwrap();
        assert_eq!(b, [v(&[1, 0, -1]), v(&[0, 1, 1])]);
        assert_eq!(b[0].leading().unwrap().0, 0);
        assert_eq!(b[1].leading().unwrap().0, 1);
    }

    #[test]
    fn echelonize_dependent_pair_and_empty() {
        let x = v(&[0, 2, 4]);
        let b = echelonize(&[x.clone(), x.scale(&Scalar::from_integer(2))]).unwrap();
        assert_eq!(b, [v(&[0, 1, 2])]);
        assert!(echelonize(&[]).unwrap().is_empty());
    }

    #[test]
    fn echelonize_rejects_symbolic_entries() {
        let r = Poly::ring(&["t"]);
        let mut sv = SparseVec::<Poly>::zero(2);
        sv.set(0, Poly::variable(&r, "t").unwrap());
        assert_eq!(echelonize_symbolic(&[sv]), Err(Error::UnsupportedSymbolicRank));
        let mut cv = SparseVec::<Poly>::zero(2);
        cv.set(1, Poly::constant(Scalar::from_integer(3)));
        assert_eq!(echelonize_symbolic(&[cv]).unwrap(), [v(&[0, 1])]);
    }

    #[test]
    fn solve_unique_kernel_and_inconsistent() {
        let zero = Scalar::zero();
        let s = solve_linear(&[(v(&[1, 1]), zero.clone()), (v(&[1, -1]), zero.clone())], 2).unwrap();
        assert_eq!(
            s,
            LinearSolution::Solutions {
                particular: Vector::zero(2),
                kernel: Vec::new()
            }
        );
        let s = solve_linear(&[(v(&[1, 1]), zero)], 2).unwrap();
        assert_eq!(s.kernel_dim(), Some(1));
        let s = solve_linear(
            &[(v(&[1]), Scalar::from_integer(1)), (v(&[1]), Scalar::from_integer(2))],
            1,
        )
        .unwrap();
        assert_eq!(s, LinearSolution::Inconsistent);
    }

    #[test]
    fn particular_solution_satisfies_system() {
        let rows = [
            (v(&[1, 2, 0]), Scalar::from_integer(3)),
            (v(&[0, 1, 1]), Scalar::from_integer(1)),
        ];
        let LinearSolution::Solutions { particular, kernel } = solve_linear(&rows, 3).unwrap() else {
            panic!("consistent system")
        };
        let dot = |a: &Vector, b: &Vector| {
            let mut acc = Scalar::zero();
            for (i, c) in a.iter() {
                if let Some(d) = b.get(i) {
                    acc += &(c * d);
                }
            }
            acc
        };
        for (row, rhs) in &rows {
            assert_eq!(&dot(row, &particular), rhs);
            for k in &kernel {
                assert!(dot(row, k).is_zero());
            }
        }
        assert_eq!(kernel.len(), 1);
    }
}
