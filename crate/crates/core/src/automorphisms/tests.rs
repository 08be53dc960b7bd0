use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::generators::sigma_q_action;
use super::*;
use crate::matrix_families::{build_classical, gamma, DenseMat, FamilySpec, MatrixAlgebra, MatrixElement};

fn alg(spec: FamilySpec) -> MatrixAlgebra {
    build_classical(spec).unwrap()
}

fn gl21() -> MatrixAlgebra {
    alg(FamilySpec::Gl { m: 2, n: 1 })
}

fn unit(a: &MatrixAlgebra, r: usize, c: usize) -> Vector {
    a.coords(&MatrixElement::unit(a.shape(), r, c)).unwrap()
}

fn concrete(a: &MatrixAlgebra, g: Generator) -> LinearMap {
    generator(&g, a).unwrap().evaluate(&Assignment::new()).unwrap()
}

fn image(a: &MatrixAlgebra, f: &LinearMap, r: usize, c: usize) -> MatrixElement {
    a.element(&f.apply(&unit(a, r, c)).unwrap()).unwrap()
}

#[test]
fn j_scales_odd_blocks_oppositely() {
    let a = gl21();
    let j = concrete(&a, Generator::j_value(Scalar::from_integer(3)));
    let s = a.shape();
    assert_eq!(image(&a, &j, 0, 1), MatrixElement::unit(s, 0, 1));
    assert_eq!(image(&a, &j, 0, 2), MatrixElement::from_terms(s, &[(0, 2, 3)]));
    let third = Scalar::ratio(1, 3);
    let mut expect = MatrixElement::zero(s);
    expect.set(2, 0, third);
    assert_eq!(image(&a, &j, 2, 0), expect);
}

#[test]
fn tau_on_gl21_units() {
    let a = gl21();
    let t = concrete(&a, Generator::Tau);
    let s = a.shape();
    assert_eq!(image(&a, &t, 0, 2), MatrixElement::from_terms(s, &[(2, 0, -1)]));
    assert_eq!(image(&a, &t, 2, 0), MatrixElement::unit(s, 0, 2));
    assert_eq!(image(&a, &t, 0, 1), MatrixElement::from_terms(s, &[(1, 0, -1)]));
}

#[test]
fn pi_swaps_diagonal_blocks() {
    let a = alg(FamilySpec::Gl { m: 2, n: 2 });
    let p = concrete(&a, Generator::Pi);
    assert_eq!(image(&a, &p, 0, 0), MatrixElement::unit(a.shape(), 2, 2));
    assert_eq!(image(&a, &p, 0, 3), MatrixElement::unit(a.shape(), 2, 1));
}

#[test]
fn generator_identities_at_sample_points() {
    let a = gl21();
    let j = |v: i64| concrete(&a, Generator::j_value(Scalar::from_integer(v)));
    assert_eq!(j(2).compose(&j(3)).unwrap(), j(6));
    let t = concrete(&a, Generator::Tau);
    assert_eq!(t.compose(&t).unwrap(), j(-1));
    let b = alg(FamilySpec::Gl { m: 2, n: 2 });
    let p = concrete(&b, Generator::Pi);
    assert!(p.compose(&p).unwrap().is_identity());
}

#[test]
fn symbolic_j_composes_through_side_relation() {
    let a = gl21();
    let f = generator(&Generator::j_symbolic(), &a).unwrap();
    assert_eq!(f.params(), &["lambda".to_string(), "mu".to_string()]);
    let sq = f.power(2);
    let at = assignment([("lambda", Scalar::from_integer(2)), ("mu", Scalar::ratio(1, 2))]);
    let j4 = concrete(&a, Generator::j_value(Scalar::from_integer(4)));
    assert_eq!(sq.evaluate(&at).unwrap(), j4);
}

#[test]
fn side_relation_violation_is_reported() {
    let a = gl21();
    let f = generator(&Generator::j_symbolic(), &a).unwrap();
    let bad = assignment([("lambda", Scalar::from_integer(2)), ("mu", Scalar::from_integer(2))]);
    assert!(matches!(f.evaluate(&bad), Err(Error::InvalidAssignment(_))));
}

#[test]
fn generators_are_homomorphisms() {
    let sl = alg(FamilySpec::Sl { m: 2, n: 1 });
    let j5 = generator(&Generator::j_value(Scalar::from_integer(5)), &sl).unwrap();
    assert!(j5.is_homomorphism(sl.algebra(), &Assignment::new()).unwrap().holds());
    let a = gl21();
    let t = generator(&Generator::Tau, &a).unwrap();
    assert!(t.is_homomorphism(a.algebra(), &Assignment::new()).unwrap().holds());
    let x = DenseMat::from_rows(&[&[1, 2], &[0, 1]]);
    let y = DenseMat::identity(1);
    let ad = generator(&Generator::Ad { x, y }, &a).unwrap();
    assert!(ad.is_homomorphism(a.algebra(), &Assignment::new()).unwrap().holds());
}

#[test]
fn scaling_one_odd_block_breaks_multiplicativity() {
    let a = gl21();
    let mut m = LinearMap::identity(a.dim());
    for r in 0..2 {
        let i = unit(&a, r, 2).leading().unwrap().0;
        m.set(i, i, Scalar::from_integer(2));
    }
    let report = multiplicativity(a.algebra(), &m);
    let v = report.violation.expect("not a homomorphism");
    let labels = a.algebra().space().labels();
    let pair = [labels[v.i].as_str(), labels[v.j].as_str()];
    assert!(pair.contains(&"e13") && pair.contains(&"e31"), "{pair:?}");
}

#[test]
fn sigma_q_needs_the_negative_transpose() {
    for spec in [FamilySpec::QTilde { k: 2 }, FamilySpec::Q { k: 2 }] {
        let a = alg(spec);
        let s = generator(&Generator::SigmaQ, &a).unwrap();
        assert!(
            s.is_homomorphism(a.algebra(), &Assignment::new()).unwrap().holds(),
            "{spec}"
        );
    }
    let a = alg(FamilySpec::QTilde { k: 2 });
    let plus = a.restrict_to_cover(&sigma_q_action(a.shape(), 1)).unwrap();
    let plus = EndoFamily::new(a.algebra(), "sigma+", Vec::new(), Vec::new(), plus).unwrap();
    assert!(!plus.is_homomorphism(a.algebra(), &Assignment::new()).unwrap().holds());
}

#[test]
fn rho_is_an_automorphism_only_modulo_the_centre() {
    let psl = alg(FamilySpec::Psl { n: 2 });
    let finding = rho_homomorphism_finding(&psl, 11, 5).unwrap();
    assert_eq!(finding.homomorphisms, 5);
    let gl = alg(FamilySpec::Gl { m: 2, n: 2 });
    let finding = rho_homomorphism_finding(&gl, 11, 5).unwrap();
    assert!(finding.homomorphisms < 5);
    assert!(finding.counterexample.is_some());
    let r = generator(&Generator::rho_values([1, 0, 0, 1]), &gl).unwrap();
    assert!(r.evaluate(&Assignment::new()).unwrap().is_identity());
}

#[test]
fn rho_rejects_non_unimodular_values() {
    let gl = alg(FamilySpec::Gl { m: 2, n: 2 });
    assert!(generator(&Generator::rho_values([2, 0, 0, 1]), &gl).is_err());
    assert!(generator(&Generator::rho_symbolic(), &gl21()).is_err());
}

#[test]
fn ad_needs_unimodular_blocks() {
    let a = gl21();
    let x = DenseMat::from_rows(&[&[2, 0], &[0, 1]]);
    let y = DenseMat::identity(1);
    assert!(matches!(
        generator(&Generator::Ad { x, y }, &a),
        Err(Error::NotUnimodular(_))
    ));
}

#[test]
fn sigma_q_outside_q_is_rejected() {
    assert!(matches!(
        generator(&Generator::SigmaQ, &gl21()),
        Err(Error::WrongAlgebra { .. })
    ));
}

#[test]
fn ad_gamma_is_an_osp_automorphism() {
    let a = alg(FamilySpec::Osp { m: 2, n2: 2 });
    let g = generator(&Generator::AdGamma, &a).unwrap();
    let map = g.evaluate(&Assignment::new()).unwrap();
    assert!(multiplicativity(a.algebra(), &map).holds());
    assert!(map.is_invertible());
    assert_eq!(gamma(2).get(0, 0), &Scalar::from_integer(-1));
}

#[test]
fn descended_maps_act_on_psl() {
    let psl = alg(FamilySpec::Psl { n: 2 });
    let t = concrete(&psl, Generator::Tau);
    assert_eq!(t.source_dim(), 14);
    assert!(multiplicativity(psl.algebra(), &t).holds());
    let j = concrete(&psl, Generator::j_value(Scalar::from_integer(-2)));
    assert!(j.is_invertible());
    assert!(multiplicativity(psl.algebra(), &j).holds());
}

#[test]
fn compose_rejects_other_algebras() {
    let a = generator(&Generator::Tau, &gl21()).unwrap();
    let b = generator(&Generator::Tau, &alg(FamilySpec::Gl { m: 2, n: 2 })).unwrap();
    assert!(matches!(a.compose(&b), Err(Error::AlgebraMismatch(..))));
}

#[test]
fn relation_suites_hold() {
    for spec in [
        FamilySpec::Gl { m: 2, n: 1 },
        FamilySpec::Sl { m: 2, n: 1 },
        FamilySpec::Gl { m: 2, n: 2 },
        FamilySpec::Psl { n: 2 },
        FamilySpec::Q { k: 2 },
        FamilySpec::QTilde { k: 2 },
    ] {
        let a = alg(spec);
        let reports = relation_suite(&a, 7, 5).unwrap();
        assert!(!reports.is_empty(), "{spec}");
        for r in reports {
            assert!(r.holds(), "{}: {:?}", r.name, r.first_failure);
        }
    }
    assert!(relations_for(&FamilySpec::P { k: 2 }).is_empty());
    assert_eq!(relations_for(&FamilySpec::Gl { m: 2, n: 2 }).len(), 14);
}

#[test]
fn generators_are_invertible() {
    let a = alg(FamilySpec::Gl { m: 2, n: 2 });
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for g in [
        Generator::Tau,
        Generator::Pi,
        Generator::j_value(random_lambda(&mut rng)),
        Generator::Ad {
            x: random_unimodular(2, &mut rng),
            y: random_unimodular(2, &mut rng),
        },
    ] {
        assert!(concrete(&a, g).is_invertible());
    }
}

#[test]
fn generator_specs_parse() {
    let cases = [
        "tau",
        "pi^2",
        "j:3",
        "j:nu",
        "rho:1,0,0,1",
        "rho:a,b,c,d",
        "sigma_q^2",
        "Ad:gamma",
        "id",
    ];
    for c in cases {
        let g: GeneratorSpec = c.parse().unwrap();
        assert_eq!(g.to_string().parse::<GeneratorSpec>().unwrap(), g, "{c}");
    }
    assert!("j:0".parse::<GeneratorSpec>().is_err());
    assert!("tau^x".parse::<GeneratorSpec>().is_err());
    assert!("frob".parse::<GeneratorSpec>().is_err());
}
