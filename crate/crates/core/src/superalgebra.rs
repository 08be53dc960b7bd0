//! Lie superalgebras given by structure constants.
//!
//! Only brackets `[b_i, b_j]` with `i ≤ j` are stored; the other order is
//! recovered from graded skew-symmetry, so that identity holds by
//! construction.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};
use crate::superlinear::{Echelon, LinearMap, Parity, SparseVec, SuperSpace, Vector};

pub type Subspace = Echelon;

#[derive(Clone, Debug)]
pub struct StructureConstants {
    space: SuperSpace,
    table: BTreeMap<(usize, usize), Vector>,
    /// `[b_i, b_j]` for all ordered pairs, row-major.
    full: Vec<Vector>,
}

impl StructureConstants {
    pub fn new(space: SuperSpace, table: BTreeMap<(usize, usize), Vector>) -> Result<Self> {
        let dim = space.dim();
        let mut clean = BTreeMap::new();
        for ((i, j), v) in table {
            if i > j {
                return Err(Error::Format(alloc::format!("bracket record ({i}, {j}) has i > j")));
            }
            if j >= dim {
                return Err(Error::IndexOutOfRange { index: j, bound: dim });
            }
            v.check_dim(dim)?;
            if v.is_zero() {
                continue;
            }
            if i == j && space.parity(i) == Parity::Even {
                return Err(Error::Format(alloc::format!(
                    "[b{i}, b{i}] must vanish for an even basis vector"
                )));
            }
            clean.insert((i, j), v);
        }
        let mut full = alloc::vec![Vector::zero(dim); dim * dim];
        for (&(i, j), v) in &clean {
            full[i * dim + j] = v.clone();
            if i != j {
                let sign = -Parity::koszul(space.parity(i), space.parity(j));
                full[j * dim + i] = v.scale(&Scalar::from_integer(sign));
            }
        }
        Ok(StructureConstants {
            space,
            table: clean,
            full,
        })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    /// Stored records `(i, j) → [b_i, b_j]` with `i ≤ j`.
    pub fn table(&self) -> &BTreeMap<(usize, usize), Vector> {
        &self.table
    }
}

#[derive(Clone, Debug)]
pub struct SuperAlgebra {
    name: String,
    sc: StructureConstants,
    metadata: Vec<(String, String)>,
    z_graded: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomViolation {
    /// `[b_i, b_j]` is not of parity `|b_i| + |b_j|`.
    Homogeneity { i: usize, j: usize },
    /// Nonzero graded Jacobi sum on the basis triple.
    Jacobi {
        i: usize,
        j: usize,
        k: usize,
        residual: Vector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples_checked: usize,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingReport {
    /// Dimension of each occurring degree.
    pub support: BTreeMap<i32, usize>,
    /// Basis indices whose parity disagrees with degree mod 2.
    pub parity_mismatches: Vec<usize>,
    /// Pairs `(i, j)` with `[g_a, g_b] ⊄ g_{a+b}`.
    pub bracket_failures: Vec<(usize, usize)>,
}

impl GradingReport {
    pub fn passed(&self) -> bool {
        self.parity_mismatches.is_empty() && self.bracket_failures.is_empty()
    }
}

impl SuperAlgebra {
    pub fn new(name: impl Into<String>, sc: StructureConstants) -> Self {
        SuperAlgebra {
            name: name.into(),
            sc,
            metadata: Vec::new(),
            z_graded: false,
        }
    }

    /// Builds the table by evaluating `bracket(i, j)` for every `i ≤ j`.
    pub fn from_bracket_fn(
        name: impl Into<String>,
        space: SuperSpace,
        mut bracket: impl FnMut(usize, usize) -> Result<Vector>,
    ) -> Result<Self> {
        let dim = space.dim();
        let mut table = BTreeMap::new();
        for i in 0..dim {
            for j in i..dim {
                if i == j && space.parity(i) == Parity::Even {
                    continue;
                }
                let v = bracket(i, j)?;
                if !v.is_zero() {
                    table.insert((i, j), v);
                }
            }
        }
        Ok(Self::new(name, StructureConstants::new(space, table)?))
    }

    /// The abelian algebra on `space`.
    pub fn abelian(name: impl Into<String>, space: SuperSpace) -> Self {
        Self::new(name, StructureConstants::new(space, BTreeMap::new()).unwrap())
    }

    pub fn with_metadata(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.metadata.push((key.into(), value.into()));
        self
    }

    /// Declares the attached degrees to be a ℤ-grading of the bracket, not
    /// only a vector-space decomposition.
    pub fn with_z_grading(mut self, graded: bool) -> Self {
        self.z_graded = graded;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn is_z_graded(&self) -> bool {
        self.z_graded && self.sc.space.degrees().is_some()
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.sc
    }

    pub fn space(&self) -> &SuperSpace {
        &self.sc.space
    }

    pub fn dim(&self) -> usize {
        self.sc.space.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.sc.space.parity(i)
    }

    pub fn label(&self, i: usize) -> &str {
        self.sc.space.label(i)
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        Vector::basis(self.dim(), i)
    }

    /// `[b_i, b_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &Vector {
        &self.sc.full[i * self.dim() + j]
    }

    /// Whether some bracket of basis vectors is nonzero.
    pub fn is_abelian(&self) -> bool {
        self.sc.table.is_empty()
    }

    /// Bilinear extension of the table.
    pub fn bracket<T: Coeff>(&self, x: &SparseVec<T>, y: &SparseVec<T>) -> Result<SparseVec<T>> {
        x.check_dim(self.dim())?;
        y.check_dim(self.dim())?;
        let mut out = SparseVec::zero(self.dim());
        for (a, xa) in x.iter() {
            for (b, yb) in y.iter() {
                let v = self.bracket_basis(a, b);
                if v.is_zero() {
                    continue;
                }
                let c = xa.mul_ref(yb);
                for (k, s) in v.iter() {
                    out.add_at(k, &c.scale(s));
                }
            }
        }
        Ok(out)
    }

    /// `[b_i, y]` without the outer loop over `x`.
    pub fn bracket_with_basis<T: Coeff>(&self, i: usize, y: &SparseVec<T>) -> SparseVec<T> {
        let mut out = SparseVec::zero(self.dim());
        for (b, yb) in y.iter() {
            out.axpy_scalar_lifted(yb, self.bracket_basis(i, b));
        }
        out
    }

    /// The σ-twisted graded Jacobi sum
    /// `(−1)^{|x||z|}[σx,[y,z]] + (−1)^{|y||x|}[σy,[z,x]] + (−1)^{|z||y|}[σz,[x,y]]`
    /// for homogeneous `x, y, z` of parities `p`, with `images = (σx, σy, σz)`.
    pub fn twisted_jacobi<T: Coeff>(
        &self,
        images: [&SparseVec<T>; 3],
        args: [&SparseVec<T>; 3],
        p: [Parity; 3],
    ) -> Result<SparseVec<T>> {
        let [sx, sy, sz] = images;
        let [x, y, z] = args;
        let mut out = self.bracket(sx, &self.bracket(y, z)?)?;
        if Parity::koszul(p[0], p[2]) < 0 {
            out = out.negated();
        }
        let mut t2 = self.bracket(sy, &self.bracket(z, x)?)?;
        if Parity::koszul(p[1], p[0]) < 0 {
            t2 = t2.negated();
        }
        let mut t3 = self.bracket(sz, &self.bracket(x, y)?)?;
        if Parity::koszul(p[2], p[1]) < 0 {
            t3 = t3.negated();
        }
        out.axpy_scalar(&Scalar::one(), &t2);
        out.axpy_scalar(&Scalar::one(), &t3);
        Ok(out)
    }

    /// Graded Jacobi sum for basis indices with σ = id.
    pub fn jacobi_basis(&self, i: usize, j: usize, k: usize) -> Vector {
        let (x, y, z) = (self.basis_vector(i), self.basis_vector(j), self.basis_vector(k));
        let p = [self.parity(i), self.parity(j), self.parity(k)];
        self.twisted_jacobi([&x, &y, &z], [&x, &y, &z], p)
            .expect("basis vectors live in the algebra")
    }

    /// Homogeneity of every table entry and the graded Jacobi identity on
    /// all basis triples `i ≤ j ≤ k` (the sum is graded-alternating, so
    /// the other orderings follow).
    pub fn verify_axioms(&self) -> AxiomReport {
        let space = self.space();
        for (&(i, j), v) in &self.sc.table {
            let expected = space.parity(i) + space.parity(j);
            if v.iter().any(|(k, _)| space.parity(k) != expected) {
                return AxiomReport {
                    triples_checked: 0,
                    violation: Some(AxiomViolation::Homogeneity { i, j }),
                };
            }
        }
        let n = self.dim();
        let mut checked = 0;
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    checked += 1;
                    let r = self.jacobi_basis(i, j, k);
                    if !r.is_zero() {
                        return AxiomReport {
                            triples_checked: checked,
                            violation: Some(AxiomViolation::Jacobi { i, j, k, residual: r }),
                        };
                    }
                }
            }
        }
        AxiomReport {
            triples_checked: checked,
            violation: None,
        }
    }

    /// Matrix of `y ↦ [x, y]`.
    pub fn adjoint_matrix(&self, x: &Vector) -> Result<LinearMap> {
        x.check_dim(self.dim())?;
        let cols = (0..self.dim())
            .map(|j| self.bracket(x, &self.basis_vector(j)))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(self.dim(), cols)
    }

    /// Smallest subspace containing `seeds` and stable under `ad(b)` for
    /// every basis vector `b`.
    pub fn ideal_generated(&self, seeds: &[Vector]) -> Result<Subspace> {
        let acting: Vec<usize> = (0..self.dim()).collect();
        self.saturate(&acting, seeds)
    }

    /// Smallest subspace containing `seeds` and stable under `ad(b_i)` for
    /// the listed basis indices.
    pub fn saturate(&self, acting: &[usize], seeds: &[Vector]) -> Result<Subspace> {
        let mut span = Echelon::new(self.dim());
        let mut queue = VecDeque::new();
        for s in seeds {
            if span.insert(s)?.is_some() {
                queue.push_back(s.clone());
            }
        }
        while let Some(v) = queue.pop_front() {
            for &a in acting {
                let w = self.bracket_with_basis(a, &v);
                if span.insert(&w)?.is_some() {
                    queue.push_back(w);
                }
            }
        }
        Ok(span)
    }

    /// Checks `[g_a, g_b] ⊆ g_{a+b}` and `parity ≡ degree (mod 2)`.
    pub fn verify_grading(&self) -> Result<GradingReport> {
        let degrees = self.space().degrees().ok_or(Error::NoGrading)?;
        let mut support = BTreeMap::new();
        let mut parity_mismatches = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            *support.entry(d).or_insert(0) += 1;
            if Parity::from_degree(d) != self.parity(i) {
                parity_mismatches.push(i);
            }
        }
        let mut bracket_failures = Vec::new();
        for (&(i, j), v) in &self.sc.table {
            let d = degrees[i] + degrees[j];
            if v.iter().any(|(k, _)| degrees[k] != d) {
                bracket_failures.push((i, j));
            }
        }
        Ok(GradingReport {
            support,
            parity_mismatches,
            bracket_failures,
        })
    }
}

impl<T: Coeff> SparseVec<T> {
    pub fn negated(&self) -> SparseVec<T> {
        self.map(T::negate)
    }

    /// `self += c·v` for a coefficient `c` and a constant vector `v`.
    pub fn axpy_scalar_lifted(&mut self, c: &T, v: &Vector) {
        for (k, s) in v.iter() {
            self.add_at(k, &c.scale(s));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    /// gl(1|1) with basis e11, e12, e21, e22 (e12, e21 odd), built from the
    /// supercommutator of 2×2 matrix units computed independently here.
    pub(crate) fn gl11() -> SuperAlgebra {
        let labels = ["e11", "e12", "e21", "e22"];
        let pos = [(0, 0), (0, 1), (1, 0), (1, 1)];
        let parity = |k: usize| Parity::from_bit(((pos[k].0 + pos[k].1) % 2) as u8);
        let space = SuperSpace::new(
            (0..4).map(parity).collect(),
            None,
            labels.iter().map(|s| s.to_string()).collect(),
        )
        .unwrap();
        let idx = |r: usize, c: usize| pos.iter().position(|&p| p == (r, c)).unwrap();
        SuperAlgebra::from_bracket_fn("gl(1|1)", space, |a, b| {
            let (i, j) = pos[a];
            let (k, l) = pos[b];
            let sign = Parity::koszul(parity(a), parity(b));
            let mut v = Vector::zero(4);
            // e_ij e_kl − (−1)^{|a||b|} e_kl e_ij
            if j == k {
                v.add_at(idx(i, l), &Scalar::one());
            }
            if l == i {
                v.add_at(idx(k, j), &Scalar::from_integer(-sign));
            }
            Ok(v)
        })
        .unwrap()
    }

    fn e(g: &SuperAlgebra, label: &str) -> Vector {
        g.basis_vector(g.space().index_of(label).unwrap())
    }

    #[test]
    fn odd_anticommutator_and_even_commutator() {
        let g = gl11();
        let b = g.bracket(&e(&g, "e12"), &e(&g, "e21")).unwrap();
        assert_eq!(b, e(&g, "e11").add(&e(&g, "e22")));
        assert_eq!(g.bracket(&e(&g, "e11"), &e(&g, "e12")).unwrap(), e(&g, "e12"));
        assert!(g.bracket(&e(&g, "e12"), &e(&g, "e12")).unwrap().is_zero());
    }

    #[test]
    fn graded_skew_symmetry_both_orders() {
        let g = gl11();
        for i in 0..4 {
            for j in 0..4 {
                let s = -Parity::koszul(g.parity(i), g.parity(j));
                assert_eq!(
                    g.bracket_basis(i, j),
                    &g.bracket_basis(j, i).scale(&Scalar::from_integer(s))
                );
            }
        }
    }

    #[test]
    fn gl11_and_abelian_pass_axioms() {
        assert!(gl11().verify_axioms().passed());
        let ab = SuperAlgebra::abelian("ab", SuperSpace::anonymous(alloc::vec![Parity::Even, Parity::Odd]));
        assert!(ab.verify_axioms().passed());
    }

    #[test]
    fn corrupted_table_is_flagged() {
        let g = gl11();
        let mut table = g.structure_constants().table().clone();
        table.insert((1, 2), e(&g, "e11"));
        let bad = SuperAlgebra::new("bad", StructureConstants::new(g.space().clone(), table).unwrap());
        let report = bad.verify_axioms();
        assert!(matches!(report.violation, Some(AxiomViolation::Jacobi { .. })));
    }

    #[test]
    fn inhomogeneous_entry_is_flagged() {
        let g = gl11();
        let mut table = g.structure_constants().table().clone();
        table.insert((0, 1), e(&g, "e11"));
        let bad = SuperAlgebra::new("bad", StructureConstants::new(g.space().clone(), table).unwrap());
        assert_eq!(
            bad.verify_axioms().violation,
            Some(AxiomViolation::Homogeneity { i: 0, j: 1 })
        );
    }

    #[test]
    fn even_diagonal_and_reversed_records_are_rejected() {
        let g = gl11();
        let mut t = BTreeMap::new();
        t.insert((0, 0), e(&g, "e11"));
        assert!(StructureConstants::new(g.space().clone(), t).is_err());
        let mut t = BTreeMap::new();
        t.insert((2, 1), e(&g, "e11"));
        assert!(StructureConstants::new(g.space().clone(), t).is_err());
    }

    #[test]
    fn adjoint_of_parity_weight_and_center() {
        let g = gl11();
        let h = e(&g, "e11").sub(&e(&g, "e22"));
        let ad = g.adjoint_matrix(&h).unwrap();
        assert_eq!(
            ad.apply(&e(&g, "e12")).unwrap(),
            e(&g, "e12").scale(&Scalar::from_integer(2))
        );
        assert_eq!(
            ad.apply(&e(&g, "e21")).unwrap(),
            e(&g, "e21").scale(&Scalar::from_integer(-2))
        );
        let id = e(&g, "e11").add(&e(&g, "e22"));
        assert!(g.adjoint_matrix(&id).unwrap().is_zero());
        assert!(g.adjoint_matrix(&Vector::zero(4)).unwrap().is_zero());
    }

    #[test]
    fn ideals_by_saturation() {
        let g = gl11();
        assert_eq!(g.ideal_generated(&[Vector::zero(4)]).unwrap().rank(), 0);
        let id = e(&g, "e11").add(&e(&g, "e22"));
        let c = g.ideal_generated(core::slice::from_ref(&id)).unwrap();
        assert_eq!(c.rank(), 1);
        assert!(c.contains(&id));
        // idempotent
        let again = g.ideal_generated(&c.basis()).unwrap();
        assert_eq!(again.basis(), c.basis());
        // monotone
        let bigger = g.ideal_generated(&[id, e(&g, "e12")]).unwrap();
        assert!(c.basis().iter().all(|v| bigger.contains(v)));
    }

    #[test]
    fn space_mismatch_is_an_error() {
        let g = gl11();
        assert!(matches!(
            g.bracket(&Vector::zero(3), &Vector::zero(4)),
            Err(Error::SpaceMismatch { .. })
        ));
    }

    #[test]
    fn grading_requires_degrees() {
        assert_eq!(gl11().verify_grading(), Err(Error::NoGrading));
    }
}
