//! Parametrized even endomorphisms: the standard generators Ad, ȷ(λ), τ, π,
//! ρ and σ_q, their composition, and homomorphism checks.

mod generators;
mod relations;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

pub use generators::{generator, gl_action, Generator, GeneratorSpec, Lambda, RhoParams};
pub use relations::{
    random_lambda, random_unimodular, relation_suite, relations_for, rho_homomorphism_finding, verify_relation,
    RelationId, RelationReport, RhoFinding,
};

use crate::error::{Error, Result};
use crate::scalars::{Assignment, Poly, Scalar};
use crate::superalgebra::SuperAlgebra;
use crate::superlinear::{LinearMap, Parity, Quotient, SuperSpace, Vector};

/// An even linear map on a superalgebra whose entries are polynomials in
/// named parameters, valid where the side relations vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoFamily {
    algebra: String,
    parities: Vec<Parity>,
    params: Vec<String>,
    side_relations: Vec<Poly>,
    matrix: LinearMap<Poly>,
    label: String,
}

/// A pair of basis vectors on which multiplicativity fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomViolation {
    pub i: usize,
    pub j: usize,
    /// σ[b_i, b_j].
    pub lhs: Vector,
    /// [σb_i, σb_j].
    pub rhs: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    pub violation: Option<HomViolation>,
}

impl HomomorphismReport {
    pub fn holds(&self) -> bool {
        self.violation.is_none()
    }
}

impl EndoFamily {
    pub fn new(
        algebra: &SuperAlgebra,
        label: impl Into<String>,
        params: Vec<String>,
        side_relations: Vec<Poly>,
        matrix: LinearMap<Poly>,
    ) -> Result<Self> {
        Self::on_space(algebra.name(), algebra.space(), label, params, side_relations, matrix)
    }

    pub(crate) fn on_space(
        algebra: &str,
        space: &SuperSpace,
        label: impl Into<String>,
        params: Vec<String>,
        side_relations: Vec<Poly>,
        matrix: LinearMap<Poly>,
    ) -> Result<Self> {
        let dim = space.dim();
        if matrix.source_dim() != dim || matrix.target_dim() != dim {
            return Err(Error::SpaceMismatch {
                expected: dim,
                found: matrix.source_dim(),
            });
        }
        matrix.check_even(space, space)?;
        Ok(EndoFamily {
            algebra: algebra.to_string(),
            parities: space.parities().to_vec(),
            params,
            side_relations,
            matrix,
            label: label.into(),
        })
    }

    /// A parameter-free map.
    pub fn constant(algebra: &SuperAlgebra, label: impl Into<String>, map: &LinearMap) -> Result<Self> {
        Self::new(algebra, label, Vec::new(), Vec::new(), map.lift())
    }

    pub fn identity(algebra: &SuperAlgebra) -> Self {
        Self::constant(algebra, "id", &LinearMap::identity(algebra.dim())).expect("identity is even")
    }

    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.parities.len()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn side_relations(&self) -> &[Poly] {
        &self.side_relations
    }

    pub fn matrix(&self) -> &LinearMap<Poly> {
        &self.matrix
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    fn same_algebra(&self, other: &EndoFamily) -> Result<()> {
        if self.algebra != other.algebra || self.parities != other.parities {
            return Err(Error::AlgebraMismatch(self.algebra.clone(), other.algebra.clone()));
        }
        Ok(())
    }

    /// `self ∘ other`. Parameters with equal names are shared.
    pub fn compose(&self, other: &EndoFamily) -> Result<EndoFamily> {
        self.same_algebra(other)?;
        let mut params = self.params.clone();
        for p in &other.params {
            if !params.contains(p) {
                params.push(p.clone());
            }
        }
        let mut side_relations = self.side_relations.clone();
        for r in &other.side_relations {
            if !side_relations.contains(r) {
                side_relations.push(r.clone());
            }
        }
        Ok(EndoFamily {
            algebra: self.algebra.clone(),
            parities: self.parities.clone(),
            params,
            side_relations,
            matrix: self.matrix.compose(&other.matrix)?,
            label: format!("{}*{}", self.label, other.label),
        })
    }

    /// `self^k`, with `self^0 = id`.
    pub fn power(&self, k: u32) -> EndoFamily {
        let mut acc = EndoFamily {
            params: Vec::new(),
            side_relations: Vec::new(),
            matrix: LinearMap::identity(self.dim()),
            label: String::from("id"),
            ..self.clone()
        };
        for _ in 0..k {
            acc = acc.compose(self).expect("same algebra");
        }
        acc.label = match k {
            0 => String::from("id"),
            1 => self.label.clone(),
            _ => format!("{}^{k}", self.label),
        };
        acc
    }

    /// Checks the side relations and substitutes.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<LinearMap> {
        for r in &self.side_relations {
            if !r.evaluate(assignment)?.is_zero() {
                return Err(Error::InvalidAssignment(r.to_string()));
            }
        }
        let cols = self
            .matrix
            .columns()
            .iter()
            .map(|c| {
                let mut v = Vector::zero(self.dim());
                for (i, p) in c.iter() {
                    v.set(i, p.evaluate(assignment)?);
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(self.dim(), cols)
    }

    /// Substitutes the assignment where it applies, keeping other parameters.
    pub fn specialize(&self, assignment: &Assignment) -> EndoFamily {
        let matrix = self.matrix.map_entries(|p| p.partial_evaluate(assignment));
        let side_relations = self
            .side_relations
            .iter()
            .map(|r| r.partial_evaluate(assignment))
            .filter(|r| !r.is_zero())
            .collect();
        let params = self
            .params
            .iter()
            .filter(|p| !assignment.contains_key(*p))
            .cloned()
            .collect();
        EndoFamily {
            params,
            side_relations,
            matrix,
            ..self.clone()
        }
    }

    /// Checks `σ[b_i, b_j] = [σb_i, σb_j]` on all pairs `i ≤ j`; graded
    /// skew-symmetry covers the rest.
    pub fn is_homomorphism(&self, g: &SuperAlgebra, assignment: &Assignment) -> Result<HomomorphismReport> {
        if g.name() != self.algebra || g.dim() != self.dim() {
            return Err(Error::AlgebraMismatch(self.algebra.clone(), g.name().to_string()));
        }
        let sigma = self.evaluate(assignment)?;
        Ok(multiplicativity(g, &sigma))
    }
}

/// First pair `i ≤ j` with `σ[b_i, b_j] ≠ [σb_i, σb_j]`.
pub fn multiplicativity(g: &SuperAlgebra, sigma: &LinearMap) -> HomomorphismReport {
    let n = g.dim();
    let mut checked = 0;
    for i in 0..n {
        for j in i..n {
            checked += 1;
            let lhs = sigma.apply(g.bracket_basis(i, j)).expect("dimensions agree");
            let rhs = g.bracket(sigma.column(i), sigma.column(j)).expect("dimensions agree");
            if lhs != rhs {
                return HomomorphismReport {
                    pairs_checked: checked,
                    violation: Some(HomViolation { i, j, lhs, rhs }),
                };
            }
        }
    }
    HomomorphismReport {
        pairs_checked: checked,
        violation: None,
    }
}

/// `projection ∘ f ∘ section` on the quotient, after checking that `f`
/// preserves the ideal.
pub fn descend_to_quotient(f: &EndoFamily, q: &Quotient, quotient_name: &str) -> Result<EndoFamily> {
    if f.dim() != q.ambient.dim() {
        return Err(Error::SpaceMismatch {
            expected: q.ambient.dim(),
            found: f.dim(),
        });
    }
    let matrix = q.descend(&f.matrix)?;
    EndoFamily::on_space(
        quotient_name,
        &q.quotient_space,
        f.label.clone(),
        f.params.clone(),
        f.side_relations.clone(),
        matrix,
    )
}

/// The assignment `{name ↦ value}` built from pairs.
pub fn assignment<'a>(pairs: impl IntoIterator<Item = (&'a str, Scalar)>) -> Assignment {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[cfg(test)]
mod tests;
