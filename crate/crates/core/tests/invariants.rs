use proptest::prelude::*;

use superhom_core::automorphisms::{generator, Generator, RhoParams};
use superhom_core::cartan_families::{ExteriorElement, SuperDerivation};
use superhom_core::homsolver::{hom_jacobi_residual, hom_jacobi_space, in_span};
use superhom_core::matrix_families::{build_classical, FamilySpec, MatrixAlgebra, MatrixElement};
use superhom_core::scalars::Assignment;
use superhom_core::superlinear::{echelonize, Echelon};
use superhom_core::{AlgebraSpec, LinearMap, Parity, Poly, Scalar, Vector};

fn small() -> impl Strategy<Value = Scalar> {
    (-4i64..5, -2i64..3, 1i64..4)
        .prop_map(|(a, b, d)| &Scalar::ratio(a, d) + &(&Scalar::zeta() * &Scalar::from_integer(b)))
}

fn nonzero_int() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    proptest::collection::vec(-2i64..3, dim).prop_map(move |xs| {
        Vector::from_entries(
            dim,
            xs.into_iter().enumerate().map(|(i, x)| (i, Scalar::from_integer(x))),
        )
        .unwrap()
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec((0u32..3, 0u32..3, small()), 0..4).prop_map(|terms| {
        let ring = Poly::ring(&["x", "y"]);
        let x = Poly::variable(&ring, "x").unwrap();
        let y = Poly::variable(&ring, "y").unwrap();
        terms.into_iter().fold(Poly::zero(), |acc, (a, b, c)| {
            acc.add(&x.pow(a).mul(&y.pow(b)).scale(&c))
        })
    })
}

fn psl22() -> MatrixAlgebra {
    build_classical(FamilySpec::Psl { n: 2 }).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalization_is_idempotent_and_multiplicative(p in poly(), q in poly()) {
        let n = p.normalized();
        prop_assert_eq!(n.normalized(), n.clone());
        prop_assert_eq!(p.mul(&q).normalized(), n.mul(&q.normalized()).normalized());
    }

    #[test]
    fn quotient_section_is_a_right_inverse(v in vector(14), w in vector(15)) {
        let alg = psl22();
        let q = alg.quotient.as_ref().unwrap();
        prop_assert_eq!(q.project(&q.lift(&v).unwrap()).unwrap(), v);
        let ideal = alg.embedded.coords(&MatrixElement::identity(alg.shape()).to_flat()).unwrap();
        let mut span = Echelon::new(15);
        span.insert(&ideal).unwrap();
        let back = q.lift(&q.project(&w).unwrap()).unwrap();
        prop_assert!(span.contains(&back.sub(&w)));
    }

    #[test]
    fn echelon_form_spans_the_input(vs in proptest::collection::vec(vector(6), 0..7)) {
        let rows = echelonize(&vs).unwrap();
        let mut a = Echelon::new(6);
        for r in &rows {
            a.insert(r).unwrap();
        }
        let mut b = Echelon::new(6);
        for v in &vs {
            b.insert(v).unwrap();
        }
        prop_assert!(vs.iter().all(|v| a.contains(v)));
        prop_assert!(rows.iter().all(|r| b.contains(r)));
        prop_assert_eq!(a.rank(), rows.len());
    }

    #[test]
    fn generators_preserve_parity_and_are_invertible(l in nonzero_int(), d in 1i64..4) {
        let alg = build_classical(FamilySpec::Gl { m: 2, n: 1 }).unwrap();
        let g = alg.algebra();
        let lambda = Scalar::ratio(l, d);
        let sigma = generator(&Generator::j_value(lambda), &alg).unwrap().evaluate(&Assignment::new()).unwrap();
        for i in 0..g.dim() {
            let image = sigma.apply(&g.basis_vector(i)).unwrap();
            prop_assert_eq!(g.space().parity_of(&image), Some(g.parity(i)));
        }
        prop_assert!(sigma.is_invertible());
    }

    #[test]
    fn rho_is_an_invertible_automorphism_of_psl22(t in nonzero_int(), u in nonzero_int(), lower in any::<bool>()) {
        // Products of two transvections are unimodular.
        let (b, c) = if lower { (0, t) } else { (t, 0) };
        let a = [1 + b * u, b, u, 1];
        let m = [a[0] + c * a[2], a[1] + c * a[3], a[2], a[3]];
        prop_assert_eq!(m[0] * m[3] - m[1] * m[2], 1);
        let alg = psl22();
        let v = m.map(Scalar::from_integer);
        let fam = generator(&Generator::Rho(RhoParams::Values(v)), &alg).unwrap();
        let sigma = fam.evaluate(&Assignment::new()).unwrap();
        prop_assert!(sigma.is_invertible());
        prop_assert!(fam.is_homomorphism(alg.algebra(), &Assignment::new()).unwrap().holds());
    }

    #[test]
    fn ideal_saturation_is_monotone_and_idempotent(s in proptest::collection::vec(vector(9), 1..3), extra in vector(9)) {
        let alg = build_classical(FamilySpec::Gl { m: 2, n: 1 }).unwrap();
        let g = alg.algebra();
        let homogeneous = |v: &Vector| {
            let even: Vec<(usize, Scalar)> = v.iter().filter(|(i, _)| g.parity(*i) == Parity::Even).map(|(i, c)| (i, c.clone())).collect();
            Vector::from_entries(9, even).unwrap()
        };
        let seeds: Vec<Vector> = s.iter().map(homogeneous).collect();
        let small = g.ideal_generated(&seeds).unwrap();
        let mut more = seeds.clone();
        more.push(homogeneous(&extra));
        let large = g.ideal_generated(&more).unwrap();
        prop_assert!(small.basis().iter().all(|v| large.contains(v)));
        let again = g.ideal_generated(&small.basis()).unwrap();
        prop_assert_eq!(again.basis(), small.basis());
    }

    #[test]
    fn leibniz_rule_on_random_pairs(
        j in 0usize..3,
        dmask in 0u32..8,
        fmask in 0u32..8,
        gterms in proptest::collection::vec((0u32..8, -2i64..3), 0..4),
    ) {
        let n = 3;
        let d = SuperDerivation::term(n, dmask, j);
        let f = ExteriorElement::monomial(n, fmask);
        let mut g = ExteriorElement::zero(n);
        for (m, c) in gterms {
            g.add_term(m, &Scalar::from_integer(c));
        }
        let sign = if d.parity() == Some(Parity::Odd) && f.parity() == Some(Parity::Odd) { -1 } else { 1 };
        let lhs = d.apply(&f.wedge(&g).unwrap()).unwrap();
        let rhs = d
            .apply(&f)
            .unwrap()
            .wedge(&g)
            .unwrap()
            .add(&f.wedge(&d.apply(&g).unwrap()).unwrap().scale(&Scalar::from_integer(sign)))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn identity_residual_vanishes_on_every_basis_triple() {
    for s in [
        "gl:2|1", "sl:2|1", "psl:2|2", "P:2", "Q:2", "osp:3|2", "W:3", "S:3", "H:4",
    ] {
        let b = s.parse::<AlgebraSpec>().unwrap().build().unwrap();
        let g = b.algebra();
        let id = LinearMap::<Scalar>::identity(g.dim());
        let n = g.dim();
        for i in 0..n {
            for j in i..n {
                for k in j..n {
                    assert!(
                        hom_jacobi_residual(g, &id, i, j, k).unwrap().is_zero(),
                        "{s} ({i},{j},{k})"
                    );
                }
            }
        }
        assert!(in_span(&hom_jacobi_space(g), &id), "{s}");
    }
}

#[test]
fn scalar_twists_are_multiplicative_only_at_zero_and_one() {
    use superhom_core::automorphisms::multiplicativity;
    for s in ["sl:2|1", "W:3", "Q:2"] {
        let b = s.parse::<AlgebraSpec>().unwrap().build().unwrap();
        let g = b.algebra();
        let id = LinearMap::<Scalar>::identity(g.dim());
        for (c, expect) in [(0, true), (1, true), (2, false), (-1, false)] {
            let m = id.scale(&Scalar::from_integer(c));
            assert_eq!(multiplicativity(g, &m).holds(), expect, "{s} c={c}");
        }
    }
}
