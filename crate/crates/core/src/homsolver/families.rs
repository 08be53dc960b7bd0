use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::automorphisms::EndoFamily;
use crate::cartan_families::{CartanAlgebra, CartanFamily, SuperDerivation};
use crate::catalog::BuiltAlgebra;
use crate::error::Result;
use crate::matrix_families::{FamilySpec, MatrixAlgebra, MatrixElement};
use crate::scalars::{Poly, Scalar};
use crate::superlinear::{LinearMap, Vector};

/// The diagonal scaling family on a Cartan-type algebra: `a_i` on the
/// i-th element of the (−1)-component, one scalar per degree-0 basis
/// element, and on higher degrees a scalar plus, for odd elements, a tail
/// into the (−1)-component.
pub fn cartan_diagonal_family(c: &CartanAlgebra) -> Result<EndoFamily> {
    let g = c.algebra();
    let minus = c.degree_indices(-1);
    let mut names: Vec<String> = Vec::new();
    for k in 1..=minus.len() {
        names.push(format!("a{k}"));
    }
    for k in 1..=minus.len() {
        names.push(format!("m{k}"));
    }
    let degree = |i: usize| g.space().degree(i).unwrap_or(0);
    for i in 0..g.dim() {
        match degree(i) {
            -1 => {}
            0 => names.push(format!("c{}", i + 1)),
            _ => names.push(format!("t{}", i + 1)),
        }
    }
    for i in 0..g.dim() {
        if degree(i) >= 1 && g.parity(i).is_odd() {
            for k in 1..=minus.len() {
                names.push(format!("u{}_{k}", i + 1));
            }
        }
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let ring = Poly::ring(&refs);
    let var = |s: String| Poly::variable(&ring, &s).expect("declared");
    let mut m = LinearMap::<Poly>::zero(g.dim(), g.dim());
    let mut side = Vec::new();
    for (pos, &i) in minus.iter().enumerate() {
        m.set(i, i, var(format!("a{}", pos + 1)));
        let rel = var(format!("a{}", pos + 1))
            .mul(&var(format!("m{}", pos + 1)))
            .sub(&Poly::constant_in(&ring, Scalar::one()));
        side.push(rel);
    }
    for i in 0..g.dim() {
        match degree(i) {
            -1 => {}
            0 => m.set(i, i, var(format!("c{}", i + 1))),
            d => {
                m.set(i, i, var(format!("t{}", i + 1)));
                if d >= 1 && g.parity(i).is_odd() {
                    for (pos, &r) in minus.iter().enumerate() {
                        m.set(r, i, var(format!("u{}_{}", i + 1, pos + 1)));
                    }
                }
            }
        }
    }
    EndoFamily::new(g, "diagonal", names, side, m)
}

/// A hand-picked triple on which the twisted Jacobi identity alone pins
/// down part of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedTriple {
    pub name: String,
    /// Label of the family the triple is meant for.
    pub family: String,
    pub args: [Vector; 3],
}

fn show(terms: &[(usize, usize, i64)]) -> String {
    let mut s = String::new();
    for (k, &(r, c, v)) in terms.iter().enumerate() {
        if v < 0 {
            s.push('-');
        } else if k > 0 {
            s.push('+');
        }
        if v.abs() != 1 {
            s.push_str(&v.abs().to_string());
        }
        s.push_str(&format!("e{}{}", r + 1, c + 1));
    }
    s
}

fn matrix_triple(alg: &MatrixAlgebra, family: &str, xyz: [&[(usize, usize, i64)]; 3]) -> Result<NamedTriple> {
    let shape = alg.shape();
    let mut args = Vec::with_capacity(3);
    for t in xyz {
        args.push(alg.coords(&MatrixElement::from_terms(shape, t))?);
    }
    let args: [Vector; 3] = args.try_into().expect("three arguments");
    Ok(NamedTriple {
        name: format!("x={}, y={}, z={}", show(xyz[0]), show(xyz[1]), show(xyz[2])),
        family: family.to_string(),
        args,
    })
}

fn cartan_triples(c: &CartanAlgebra) -> Result<Vec<NamedTriple>> {
    let n = c.n();
    let allow_diagonal = match c.spec.family {
        CartanFamily::W => true,
        CartanFamily::S => false,
        _ => return Ok(Vec::new()),
    };
    let g = c.algebra();
    let label = |v: &Vector| {
        let (i, _) = v.leading().expect("nonzero");
        g.space().label(i).to_string()
    };
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j && !allow_diagonal {
                continue;
            }
            for k in (0..n).filter(|&k| k != i && k != j) {
                let x = c.to_coords(&SuperDerivation::term(n, 1 << i, j))?;
                let y = c.to_coords(&SuperDerivation::partial(n, k))?;
                let z = c.to_coords(&SuperDerivation::term(n, 1 << k, i))?;
                out.push(NamedTriple {
                    name: format!("x={}, y={}, z={}", label(&x), label(&y), label(&z)),
                    family: "diagonal".into(),
                    args: [x, y, z],
                });
            }
        }
    }
    Ok(out)
}

/// The triples singled out for each family: ȷ on sl(m|n) and P, ρ on
/// psl(2|2), σ_q² on Q, the diagonal family on W and S.
pub fn named_triples(built: &BuiltAlgebra) -> Result<Vec<NamedTriple>> {
    match built {
        BuiltAlgebra::Matrix(alg) => match alg.spec {
            FamilySpec::Sl { m, .. } if m >= 2 => Ok(alloc::vec![matrix_triple(
                alg,
                "j(lambda)",
                [&[(0, m, 1)], &[(0, 1, 1)], &[(1, 0, 1)]],
            )?]),
            FamilySpec::Psl { n: 2 } => Ok(alloc::vec![
                matrix_triple(alg, "rho(a,b,c,d)", [&[(1, 2, 1)], &[(0, 1, 1)], &[(1, 0, 1)]])?,
                matrix_triple(alg, "rho(a,b,c,d)", [&[(2, 1, 1)], &[(2, 3, 1)], &[(3, 2, 1)]])?,
            ]),
            FamilySpec::P { k } => {
                let n = k + 1;
                Ok(alloc::vec![matrix_triple(
                    alg,
                    "j(lambda)",
                    [
                        &[(0, 0, 1), (1, 1, -1), (n, n, -1), (n + 1, n + 1, 1)],
                        &[(0, 1, 1), (n + 1, n, -1)],
                        &[(0, n + 1, 1), (1, n, 1)],
                    ],
                )?])
            }
            FamilySpec::Q { k } => {
                let n = k + 1;
                Ok(alloc::vec![matrix_triple(
                    alg,
                    "sigma_q^2",
                    [
                        &[(0, 1, 1), (n, n + 1, 1)],
                        &[(0, 0, 1), (1, 1, -1), (n, n, 1), (n + 1, n + 1, -1)],
                        &[(1, n, 1), (n + 1, 0, 1)],
                    ],
                )?])
            }
            _ => Ok(Vec::new()),
        },
        BuiltAlgebra::Cartan(c) => cartan_triples(c),
        BuiltAlgebra::Loaded(_) => Ok(Vec::new()),
    }
}
