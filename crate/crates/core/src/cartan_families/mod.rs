//! Cartan-type superalgebras W(n), S(n), S̃(n) and H(n) as derivations of
//! the exterior algebra Λ(n).

mod exterior;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use exterior::{ExteriorElement, SuperDerivation};

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::superalgebra::SuperAlgebra;
use crate::superlinear::{solve_linear, Echelon, Frame, LinearSolution, Parity, SuperSpace, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CartanFamily {
    W,
    S,
    STilde,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CartanSpec {
    pub family: CartanFamily,
    pub n: usize,
}

impl CartanSpec {
    pub fn new(family: CartanFamily, n: usize) -> Self {
        CartanSpec { family, n }
    }

    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let bad = |why: &str| Err(Error::Inadmissible(format!("{self}: {why}")));
        if n > 12 {
            return bad("n ≤ 12 is supported");
        }
        match self.family {
            CartanFamily::W | CartanFamily::S if n < 3 => bad("requires n ≥ 3"),
            CartanFamily::STilde if n < 4 || n % 2 == 1 => bad("requires n ≥ 4 even"),
            CartanFamily::H if n < 4 => bad("requires n ≥ 4"),
            _ => Ok(()),
        }
    }

    pub fn spec_string(&self) -> String {
        let f = match self.family {
            CartanFamily::W => "W",
            CartanFamily::S => "S",
            CartanFamily::STilde => "St",
            CartanFamily::H => "H",
        };
        format!("{f}:{}", self.n)
    }
}

impl fmt::Display for CartanSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            CartanFamily::W => "W",
            CartanFamily::S => "S",
            CartanFamily::STilde => "S~",
            CartanFamily::H => "H",
        };
        write!(f, "{name}({})", self.n)
    }
}

/// Coordinates on W(n): basis ξ_S∂_j ordered by degree, then mask, then j.
#[derive(Clone, Debug)]
pub struct WCoordinates {
    n: usize,
    terms: Vec<(u32, usize)>,
    index: Vec<usize>,
}

impl WCoordinates {
    pub fn new(n: usize) -> Self {
        let mut masks: Vec<u32> = (0..(1u32 << n)).collect();
        masks.sort_by_key(|m| (m.count_ones(), *m));
        let mut terms = Vec::with_capacity(n << n);
        for m in masks {
            for j in 0..n {
                terms.push((m, j));
            }
        }
        let mut index = alloc::vec![0; n << n];
        for (k, &(m, j)) in terms.iter().enumerate() {
            index[(m as usize) * n + j] = k;
        }
        WCoordinates { n, terms, index }
    }

    pub fn dim(&self) -> usize {
        self.terms.len()
    }

    pub fn term(&self, k: usize) -> (u32, usize) {
        self.terms[k]
    }

    pub fn index(&self, mask: u32, j: usize) -> usize {
        self.index[(mask as usize) * self.n + j]
    }

    pub fn label(&self, k: usize) -> String {
        let (m, j) = self.terms[k];
        if m == 0 {
            format!("d{}", j + 1)
        } else {
            format!("{}*d{}", exterior::mask_label(m), j + 1)
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dim()).map(|k| self.label(k)).collect()
    }

    pub fn degree(&self, k: usize) -> i32 {
        self.terms[k].0.count_ones() as i32 - 1
    }

    pub fn to_vector(&self, d: &SuperDerivation) -> Vector {
        let mut v = Vector::zero(self.dim());
        for j in 0..self.n {
            for (m, c) in d.coeff(j).terms() {
                v.set(self.index(m, j), c.clone());
            }
        }
        v
    }

    pub fn to_derivation(&self, v: &Vector) -> SuperDerivation {
        let mut d = SuperDerivation::zero(self.n);
        for (k, c) in v.iter() {
            let (m, j) = self.terms[k];
            d = d.add(&SuperDerivation::term(self.n, m, j).scale(c)).expect("same n");
        }
        d
    }
}

/// A Cartan-type superalgebra with its realization inside W(n).
#[derive(Clone, Debug)]
pub struct CartanAlgebra {
    pub spec: CartanSpec,
    pub coordinates: WCoordinates,
    /// Basis as vectors in W(n) coordinates.
    pub frame: Frame,
    algebra: SuperAlgebra,
}

impl CartanAlgebra {
    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn derivation(&self, i: usize) -> SuperDerivation {
        self.coordinates.to_derivation(self.frame.row(i))
    }

    pub fn element(&self, v: &Vector) -> SuperDerivation {
        self.coordinates.to_derivation(&self.frame.embed(v))
    }

    pub fn to_coords(&self, d: &SuperDerivation) -> Result<Vector> {
        if d.n() != self.n() {
            return Err(Error::SpaceMismatch {
                expected: self.n(),
                found: d.n(),
            });
        }
        self.frame.coords(&self.coordinates.to_vector(d))
    }

    /// Basis indices of the given degree component.
    pub fn degree_indices(&self, d: i32) -> Vec<usize> {
        self.algebra.space().degree_indices(d)
    }
}

/// Kernel of the divergence on the degree-`d` part of W(n), in W coordinates.
fn divergence_kernel(w: &WCoordinates, d: i32) -> Result<Vec<Vector>> {
    let n = w.n;
    let cols: Vec<usize> = (0..w.dim()).filter(|&k| w.degree(k) == d).collect();
    if cols.is_empty() {
        return Ok(Vec::new());
    }
    // one equation per output monomial of Λ(n)
    let mut rows: Vec<Vector> = alloc::vec![Vector::zero(cols.len()); 1 << n];
    for (t, &k) in cols.iter().enumerate() {
        let (m, j) = w.term(k);
        let div = SuperDerivation::term(n, m, j).divergence();
        for (mask, c) in div.terms() {
            rows[mask as usize].set(t, c.clone());
        }
    }
    let system: Vec<(Vector, Scalar)> = rows
        .into_iter()
        .filter(|r| !r.is_zero())
        .map(|r| (r, Scalar::zero()))
        .collect();
    let LinearSolution::Solutions { kernel, .. } = solve_linear(&system, cols.len())? else {
        unreachable!("homogeneous systems are consistent")
    };
    Ok(kernel
        .iter()
        .map(|v| {
            let mut out = Vector::zero(w.dim());
            for (t, c) in v.iter() {
                out.set(cols[t], c.clone());
            }
            out
        })
        .collect())
}

fn spanning_set(spec: CartanSpec, w: &WCoordinates) -> Result<Vec<Vector>> {
    let n = spec.n;
    match spec.family {
        CartanFamily::W => Ok((0..w.dim()).map(|k| Vector::basis(w.dim(), k)).collect()),
        CartanFamily::S => {
            let mut out = Vec::new();
            for d in -1..n as i32 {
                out.extend(divergence_kernel(w, d)?);
            }
            Ok(out)
        }
        CartanFamily::STilde => {
            let a = ExteriorElement::one(n).sub(&ExteriorElement::top(n))?;
            let mut out: Vec<Vector> = (0..n)
                .map(|i| Ok(w.to_vector(&SuperDerivation::partial(n, i).left_mul(&a)?)))
                .collect::<Result<_>>()?;
            for d in 0..n as i32 {
                out.extend(divergence_kernel(w, d)?);
            }
            Ok(out)
        }
        CartanFamily::H => {
            let mut out = Vec::new();
            for mask in 1..(1u32 << n) - 1 {
                let f = ExteriorElement::monomial(n, mask);
                let coeffs = (0..n).map(|j| f.partial(j)).collect::<Result<Vec<_>>>()?;
                out.push(w.to_vector(&SuperDerivation::from_coeffs(coeffs)?));
            }
            Ok(out)
        }
    }
}

/// Builds W(n), S(n), S̃(n) or H(n). The principal degrees are attached to
/// every basis vector; only S̃(n) is flagged as not ℤ-graded.
pub fn build_cartan(spec: CartanSpec) -> Result<CartanAlgebra> {
    spec.check()?;
    let w = WCoordinates::new(spec.n);
    let frame = Frame::span(w.dim(), &spanning_set(spec, &w)?)?;
    let mut parities = Vec::with_capacity(frame.dim());
    let mut degrees = Vec::with_capacity(frame.dim());
    let mut labels = Vec::with_capacity(frame.dim());
    let w_labels = w.labels();
    for row in frame.rows() {
        // the leading term fixes parity and degree; S̃₋₁ rows carry a top tail
        let lead = row.leading().expect("nonzero row").0;
        let d = w.degree(lead);
        let parity = Parity::from_degree(d);
        if row.iter().any(|(k, _)| Parity::from_degree(w.degree(k)) != parity) {
            return Err(Error::Grading(format!("{spec}: basis vector is not homogeneous")));
        }
        parities.push(parity);
        degrees.push(d);
        labels.push(row.describe(&w_labels));
    }
    let space = SuperSpace::new(parities, Some(degrees), labels)?;
    let derivations: Vec<SuperDerivation> = frame.rows().iter().map(|r| w.to_derivation(r)).collect();
    let name = spec.to_string();
    let algebra = SuperAlgebra::from_bracket_fn(name.clone(), space, |i, j| {
        let b = derivations[i].bracket(&derivations[j])?;
        frame
            .coords(&w.to_vector(&b))
            .map_err(|_| Error::NotClosed(format!("{name}: [b{i}, b{j}] leaves the span")))
    })?
    .with_metadata("family", spec.spec_string())
    .with_z_grading(spec.family != CartanFamily::STilde);
    Ok(CartanAlgebra {
        spec,
        coordinates: w,
        frame,
        algebra,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransitivityReport {
    /// dim {a : [a, g₋₁] = 0}.
    pub kernel_dim: usize,
    pub minus_one_dim: usize,
    /// Whether the kernel equals g₋₁.
    pub holds: bool,
}

/// Computes the joint kernel of `ad(b)` over the degree −1 basis and
/// compares it with g₋₁.
pub fn check_transitivity(g: &SuperAlgebra) -> Result<TransitivityReport> {
    if !g.is_z_graded() {
        return Err(Error::NoGrading);
    }
    let dim = g.dim();
    let minus: Vec<usize> = g.space().degree_indices(-1);
    let mut rows: Vec<(Vector, Scalar)> = Vec::new();
    for &b in &minus {
        let mut eqs: Vec<Vector> = alloc::vec![Vector::zero(dim); dim];
        for a in 0..dim {
            for (k, c) in g.bracket_basis(a, b).iter() {
                eqs[k].set(a, c.clone());
            }
        }
        rows.extend(eqs.into_iter().filter(|e| !e.is_zero()).map(|e| (e, Scalar::zero())));
    }
    let LinearSolution::Solutions { kernel, .. } = solve_linear(&rows, dim)? else {
        unreachable!("homogeneous systems are consistent")
    };
    let mut target = Echelon::new(dim);
    for &b in &minus {
        target.insert(&Vector::basis(dim, b))?;
    }
    let kernel_span = crate::superlinear::echelonize(&kernel)?;
    let holds = kernel_span == target.basis();
    Ok(TransitivityReport {
        kernel_dim: kernel_span.len(),
        minus_one_dim: minus.len(),
        holds,
    })
}

/// Whether g₋₁ is a nontrivial irreducible g₀-module, checked by
/// saturating every nonzero basis vector of g₋₁ under ad(g₀). Irreducibility
/// over the whole module follows because each basis orbit spans g₋₁ and the
/// action is nontrivial.
pub fn minus_one_irreducible(g: &SuperAlgebra) -> Result<bool> {
    let minus = g.space().degree_indices(-1);
    let zero = g.space().degree_indices(0);
    let nontrivial = minus
        .iter()
        .any(|&b| zero.iter().any(|&a| !g.bracket_basis(a, b).is_zero()));
    if !nontrivial {
        return Ok(false);
    }
    for &b in &minus {
        if g.saturate(&zero, &[g.basis_vector(b)])?.rank() != minus.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl fmt::Display for CartanAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.spec, self.dim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;

    fn built(f: CartanFamily, n: usize) -> CartanAlgebra {
        build_cartan(CartanSpec::new(f, n)).unwrap()
    }

    fn graded_dims(g: &CartanAlgebra) -> BTreeMap<i32, usize> {
        g.algebra().verify_grading().unwrap().support
    }

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn w_dimensions_match_binomial_count() {
        let g = built(CartanFamily::W, 3);
        assert_eq!(g.dim(), 24);
        let dims = graded_dims(&g);
        for j in -1..=2 {
            assert_eq!(dims[&j], 3 * binom(3, (j + 1) as usize));
        }
    }

    #[test]
    fn s_dimension_and_support() {
        let g = built(CartanFamily::S, 3);
        assert_eq!(g.dim(), 3 * 8 - 7);
        let dims = graded_dims(&g);
        assert_eq!(dims.keys().copied().collect::<Vec<_>>(), [-1, 0, 1]);
        assert_eq!(dims[&0], 8);
    }

    #[test]
    fn s_tilde_dimension_and_minus_one_part() {
        let g = built(CartanFamily::STilde, 4);
        assert_eq!(g.dim(), 49);
        assert_eq!(g.degree_indices(-1).len(), 4);
        let d = g.derivation(0);
        let expected = SuperDerivation::partial(4, 0)
            .left_mul(&ExteriorElement::one(4).sub(&ExteriorElement::top(4)).unwrap())
            .unwrap();
        assert_eq!(d, expected);
        assert!(!g.algebra().is_z_graded());
    }

    #[test]
    fn s_tilde_grading_fails_on_minus_one_brackets() {
        let g = built(CartanFamily::STilde, 4);
        let report = g.algebra().verify_grading().unwrap();
        assert!(!report.passed());
        let minus = g.degree_indices(-1);
        assert!(report
            .bracket_failures
            .iter()
            .all(|(i, j)| minus.contains(i) && minus.contains(j)));
        assert!(!report.bracket_failures.is_empty());
        // [S̃₋₁, S̃₋₁] lands in nonnegative degrees
        let degrees = g.algebra().space().degrees().unwrap();
        for &(i, j) in &report.bracket_failures {
            assert!(g.algebra().bracket_basis(i, j).iter().all(|(k, _)| degrees[k] >= 0));
        }
    }

    #[test]
    fn h_dimensions() {
        let g = built(CartanFamily::H, 4);
        assert_eq!(g.dim(), 14);
        let dims = graded_dims(&g);
        assert_eq!(dims[&0], 6);
        assert_eq!(dims[&-1], 4);
    }

    #[test]
    fn axioms_and_gradings() {
        for (f, n) in [
            (CartanFamily::W, 3),
            (CartanFamily::S, 3),
            (CartanFamily::H, 4),
            (CartanFamily::STilde, 4),
        ] {
            let g = built(f, n);
            assert!(g.algebra().verify_axioms().passed(), "{}", g.spec);
            if f != CartanFamily::STilde {
                assert!(g.algebra().verify_grading().unwrap().passed(), "{}", g.spec);
            }
        }
    }

    #[test]
    fn transitivity_and_irreducibility() {
        for (f, n, m) in [
            (CartanFamily::W, 3, 3),
            (CartanFamily::S, 3, 3),
            (CartanFamily::H, 4, 4),
        ] {
            let g = built(f, n);
            let r = check_transitivity(g.algebra()).unwrap();
            assert!(r.holds);
            assert_eq!(r.kernel_dim, m);
            assert!(minus_one_irreducible(g.algebra()).unwrap());
        }
        let st = built(CartanFamily::STilde, 4);
        assert_eq!(check_transitivity(st.algebra()), Err(Error::NoGrading));
    }

    #[test]
    fn inadmissible_ranks() {
        assert!(build_cartan(CartanSpec::new(CartanFamily::W, 2)).is_err());
        assert!(build_cartan(CartanSpec::new(CartanFamily::STilde, 5)).is_err());
        assert!(build_cartan(CartanSpec::new(CartanFamily::H, 3)).is_err());
    }

    #[test]
    fn labels_follow_degree_mask_index_order() {
        let g = built(CartanFamily::W, 3);
        let s = g.algebra().space();
        assert_eq!(s.label(0), "d1");
        assert_eq!(s.label(3), "x1*d1");
        assert_eq!(s.label(23), "x1x2x3*d3");
    }

    #[test]
    fn leibniz_rule_on_basis_derivations() {
        let g = built(CartanFamily::W, 3);
        let n = 3;
        let samples = [0b001u32, 0b011, 0b110, 0b101, 0b111];
        for i in 0..g.dim() {
            let d = g.derivation(i);
            let pd = d.parity().unwrap();
            for &a in &samples {
                for &b in &samples[..3] {
                    let f = ExteriorElement::monomial(n, a).add(&ExteriorElement::one(n)).unwrap();
                    let h = ExteriorElement::monomial(n, b);
                    let (fe, fo) = f.split();
                    for (part, pf) in [(fe, Parity::Even), (fo, Parity::Odd)] {
                        let lhs = d.apply(&part.wedge(&h).unwrap()).unwrap();
                        let s = Scalar::from_integer(Parity::koszul(pd, pf));
                        let rhs = d
                            .apply(&part)
                            .unwrap()
                            .wedge(&h)
                            .unwrap()
                            .add(&part.wedge(&d.apply(&h).unwrap()).unwrap().scale(&s))
                            .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn divergence_free_fields_close() {
        let g = built(CartanFamily::S, 3);
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                let b = g.derivation(i).bracket(&g.derivation(j)).unwrap();
                assert!(b.divergence().is_zero());
            }
        }
    }
}
