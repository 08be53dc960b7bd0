use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{basis_triples, ordered_map, residual_unchecked, CHUNK};
use crate::automorphisms::EndoFamily;
use crate::error::{Error, Result};
use crate::scalars::Poly;
use crate::superalgebra::SuperAlgebra;
use crate::superlinear::{LinearMap, SparseVec, Vector};

/// Polynomial equations in a family's parameters, each required to vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSet {
    pub parameters: Vec<String>,
    /// Normalized, deduplicated, sorted by degree and then text.
    pub equations: Vec<Poly>,
    /// Relations assumed to hold, such as `lambda*mu - 1`. They are also
    /// listed among the equations.
    pub side_relations: Vec<Poly>,
}

/// Normal form of a list of equations: content removed, leading sign
/// fixed, zeros dropped, sorted and deduplicated.
pub(crate) fn normalize_all(eqs: impl IntoIterator<Item = Poly>) -> Vec<Poly> {
    let mut keyed: BTreeMap<(u32, String), Poly> = BTreeMap::new();
    for e in eqs {
        if e.is_zero() {
            continue;
        }
        let e = e.normalized();
        keyed.entry((e.total_degree(), e.to_string())).or_insert(e);
    }
    keyed.into_values().collect()
}

impl ConstraintSet {
    pub fn new(parameters: Vec<String>, equations: impl IntoIterator<Item = Poly>, side_relations: Vec<Poly>) -> Self {
        let equations = normalize_all(equations.into_iter().chain(side_relations.iter().cloned()));
        ConstraintSet {
            parameters,
            equations,
            side_relations,
        }
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// Some equation is a nonzero constant.
    pub fn is_contradictory(&self) -> bool {
        self.equations.iter().any(|e| e.is_constant() && !e.is_zero())
    }

    pub fn union(&self, other: &ConstraintSet) -> ConstraintSet {
        let mut parameters = self.parameters.clone();
        for p in &other.parameters {
            if !parameters.contains(p) {
                parameters.push(p.clone());
            }
        }
        let mut side = self.side_relations.clone();
        side.extend(
            other
                .side_relations
                .iter()
                .filter(|r| !self.side_relations.contains(r))
                .cloned(),
        );
        ConstraintSet::new(parameters, self.equations.iter().chain(&other.equations).cloned(), side)
    }
}

fn entries(v: SparseVec<Poly>) -> impl Iterator<Item = Poly> {
    v.into_entries().into_values()
}

fn check_family(g: &SuperAlgebra, sigma: &EndoFamily) -> Result<()> {
    if sigma.algebra() != g.name() || sigma.dim() != g.dim() {
        return Err(Error::AlgebraMismatch(
            sigma.algebra().to_string(),
            g.name().to_string(),
        ));
    }
    Ok(())
}

/// Coordinates of `σ[b_i, b_j] − [σb_i, σb_j]` over all pairs `i ≤ j`.
pub fn multiplicativity_constraints(g: &SuperAlgebra, sigma: &LinearMap<Poly>) -> Result<Vec<Poly>> {
    let dim = g.dim();
    let rows: Vec<usize> = (0..dim).collect();
    let per_row = ordered_map(&rows, |&i| -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for j in i..dim {
            let lhs = sigma.apply_scalar(g.bracket_basis(i, j))?;
            let rhs = g.bracket(sigma.column(i), sigma.column(j))?;
            out.extend(entries(lhs.sub(&rhs)));
        }
        Ok(normalize_all(out))
    });
    let mut all = Vec::new();
    for r in per_row {
        all.extend(r?);
    }
    Ok(normalize_all(all))
}

/// Every coordinate of the twisted Jacobi residual over all basis triples,
/// every coordinate of the multiplicativity defect, and the side
/// relations.
pub fn family_constraints(g: &SuperAlgebra, sigma: &EndoFamily) -> Result<ConstraintSet> {
    check_family(g, sigma)?;
    let m = sigma.matrix();
    let triples = basis_triples(g.dim());
    let chunks: Vec<&[(usize, usize, usize)]> = triples.chunks(CHUNK).collect();
    let per_chunk = ordered_map(&chunks, |chunk| -> Result<Vec<Poly>> {
        let mut out = Vec::new();
        for &(i, j, k) in chunk.iter() {
            out.extend(entries(residual_unchecked(g, m, i, j, k)?));
        }
        Ok(normalize_all(out))
    });
    let mut eqs = Vec::new();
    for c in per_chunk {
        eqs.extend(c?);
    }
    eqs.extend(multiplicativity_constraints(g, m)?);
    Ok(ConstraintSet::new(
        sigma.params().to_vec(),
        eqs,
        sigma.side_relations().to_vec(),
    ))
}

/// The residual coordinates on one triple of homogeneous vectors, without
/// side relations.
pub fn triple_constraints(g: &SuperAlgebra, sigma: &EndoFamily, args: [&Vector; 3]) -> Result<ConstraintSet> {
    check_family(g, sigma)?;
    let r = super::hom_jacobi_residual_vectors(g, sigma.matrix(), args)?;
    Ok(ConstraintSet {
        parameters: sigma.params().to_vec(),
        equations: normalize_all(entries(r)),
        side_relations: Vec::new(),
    })
}
