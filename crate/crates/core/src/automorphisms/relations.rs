use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{generator, EndoFamily, Generator};
use crate::error::Result;
use crate::matrix_families::{DenseMat, FamilySpec, MatrixAlgebra};
use crate::scalars::Scalar;
use crate::superlinear::LinearMap;

/// The identities among the generators that the suite checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationId {
    /// Ad(X₁,Y₁)Ad(X₂,Y₂) = Ad(X₁X₂, Y₁Y₂)
    AdComposition,
    /// ȷ(λ₁)ȷ(λ₂) = ȷ(λ₁λ₂)
    JComposition,
    /// τ² = ȷ(−1)
    TauSquared,
    /// τ⁴ = 1
    TauFourth,
    /// π² = 1
    PiSquared,
    /// ρ(AB) = ρ(A)ρ(B)
    RhoComposition,
    /// Ad(X,Y)ȷ(λ) = ȷ(λ)Ad(X,Y)
    AdJ,
    /// Ad(X,Y)τ = τAd((Xᵗ)⁻¹, (Yᵗ)⁻¹)
    AdTau,
    /// ȷ(λ)τ = τȷ(λ⁻¹)
    JTau,
    /// Ad(X,Y)π = πAd(Y,X)
    AdPi,
    /// ȷ(λ)π = πȷ(λ⁻¹)
    JPi,
    /// τπ = πτȷ(−1) = πτ³
    TauPi,
    /// Ad(X,Y)ρ(A) = ρ(A)Ad(X,Y)
    AdRho,
    /// ρ(a,b,c,d)π = πρ(d,c,b,a)
    RhoPi,
    /// σ_q² = ȷ(−1)
    SigmaQSquared,
    /// σ_q⁴ = 1
    SigmaQFourth,
    /// σ_q Ad(X) = Ad((Xᵗ)⁻¹) σ_q with Ad(X) = Ad(X, X)
    SigmaQAd,
}

impl RelationId {
    pub const ALL: [RelationId; 17] = [
        RelationId::AdComposition,
        RelationId::JComposition,
        RelationId::TauSquared,
        RelationId::TauFourth,
        RelationId::PiSquared,
        RelationId::RhoComposition,
        RelationId::AdJ,
        RelationId::AdTau,
        RelationId::JTau,
        RelationId::AdPi,
        RelationId::JPi,
        RelationId::TauPi,
        RelationId::AdRho,
        RelationId::RhoPi,
        RelationId::SigmaQSquared,
        RelationId::SigmaQFourth,
        RelationId::SigmaQAd,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            RelationId::AdComposition => "ad-composition",
            RelationId::JComposition => "j-composition",
            RelationId::TauSquared => "tau-squared",
            RelationId::TauFourth => "tau-fourth",
            RelationId::PiSquared => "pi-squared",
            RelationId::RhoComposition => "rho-composition",
            RelationId::AdJ => "ad-j-commute",
            RelationId::AdTau => "ad-tau",
            RelationId::JTau => "j-tau",
            RelationId::AdPi => "ad-pi",
            RelationId::JPi => "j-pi",
            RelationId::TauPi => "tau-pi",
            RelationId::AdRho => "ad-rho-commute",
            RelationId::RhoPi => "rho-pi",
            RelationId::SigmaQSquared => "sigma-q-squared",
            RelationId::SigmaQFourth => "sigma-q-fourth",
            RelationId::SigmaQAd => "sigma-q-ad",
        }
    }

    pub fn statement(&self) -> &'static str {
        match self {
            RelationId::AdComposition => "Ad(X1,Y1)Ad(X2,Y2) = Ad(X1X2,Y1Y2)",
            RelationId::JComposition => "j(l1)j(l2) = j(l1*l2)",
            RelationId::TauSquared => "tau^2 = j(-1)",
            RelationId::TauFourth => "tau^4 = 1",
            RelationId::PiSquared => "pi^2 = 1",
            RelationId::RhoComposition => "rho(AB) = rho(A)rho(B)",
            RelationId::AdJ => "Ad(X,Y)j(l) = j(l)Ad(X,Y)",
            RelationId::AdTau => "Ad(X,Y)tau = tau Ad(X^-t,Y^-t)",
            RelationId::JTau => "j(l)tau = tau j(1/l)",
            RelationId::AdPi => "Ad(X,Y)pi = pi Ad(Y,X)",
            RelationId::JPi => "j(l)pi = pi j(1/l)",
            RelationId::TauPi => "tau pi = pi tau j(-1) = pi tau^3",
            RelationId::AdRho => "Ad(X,Y)rho(A) = rho(A)Ad(X,Y)",
            RelationId::RhoPi => "rho(a,b,c,d)pi = pi rho(d,c,b,a)",
            RelationId::SigmaQSquared => "sigma_q^2 = j(-1)",
            RelationId::SigmaQFourth => "sigma_q^4 = 1",
            RelationId::SigmaQAd => "sigma_q Ad(X) = Ad(X^-t) sigma_q",
        }
    }

    fn applies_to(&self, spec: &FamilySpec) -> bool {
        use RelationId::*;
        let (q, gl_like, square, two) = match *spec {
            FamilySpec::Q { .. } | FamilySpec::QTilde { .. } => (true, false, false, false),
            FamilySpec::Gl { m, n } => (false, true, m == n, m == 2 && n == 2),
            FamilySpec::Sl { .. } => (false, true, false, false),
            FamilySpec::Psl { n } => (false, true, true, n == 2),
            _ => (false, false, false, false),
        };
        match self {
            SigmaQSquared | SigmaQFourth | SigmaQAd => q,
            PiSquared | AdPi | JPi | TauPi => square,
            RhoComposition | AdRho | RhoPi => two,
            _ => gl_like,
        }
    }
}

/// Relations that make sense on the given family member.
pub fn relations_for(spec: &FamilySpec) -> Vec<RelationId> {
    RelationId::ALL.iter().copied().filter(|r| r.applies_to(spec)).collect()
}

/// A product of one to six elementary transvections `I + t·E_ij` with
/// small nonzero integer `t`.
pub fn random_unimodular<R: Rng>(size: usize, rng: &mut R) -> DenseMat {
    let mut x = DenseMat::identity(size);
    if size < 2 {
        return x;
    }
    for _ in 0..rng.gen_range(1..=6) {
        let i = rng.gen_range(0..size);
        let mut j = rng.gen_range(0..size - 1);
        if j >= i {
            j += 1;
        }
        let mut t = rng.gen_range(-3i64..=2);
        if t >= 0 {
            t += 1;
        }
        let mut e = DenseMat::identity(size);
        e.set(i, j, Scalar::from_integer(t));
        x = x.mul(&e);
    }
    x
}

/// A nonzero rational `±p/q` with `1 ≤ p ≤ 9`, `1 ≤ q ≤ 5`.
pub fn random_lambda<R: Rng>(rng: &mut R) -> Scalar {
    let p = rng.gen_range(1i64..=9);
    let q = rng.gen_range(1i64..=5);
    let s = if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::ratio(s * p, q)
}

fn concrete(gen: Generator, alg: &MatrixAlgebra) -> Result<LinearMap> {
    generator(&gen, alg)?.evaluate(&Default::default())
}

fn ad(alg: &MatrixAlgebra, x: &DenseMat, y: &DenseMat) -> Result<LinearMap> {
    concrete(
        Generator::Ad {
            x: x.clone(),
            y: y.clone(),
        },
        alg,
    )
}

fn j(alg: &MatrixAlgebra, l: &Scalar) -> Result<LinearMap> {
    concrete(Generator::j_value(l.clone()), alg)
}

fn inv_t(x: &DenseMat) -> DenseMat {
    x.transpose().inverse().expect("unimodular")
}

fn pow(f: &LinearMap, k: u32) -> LinearMap {
    (0..k).fold(LinearMap::identity(f.source_dim()), |acc, _| {
        acc.compose(f).expect("square")
    })
}

fn rho(alg: &MatrixAlgebra, m: &DenseMat) -> Result<LinearMap> {
    let v = [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)].map(Clone::clone);
    concrete(Generator::Rho(super::RhoParams::Values(v)), alg)
}

fn dense2(a: &Scalar, b: &Scalar, c: &Scalar, d: &Scalar) -> DenseMat {
    let mut m = DenseMat::zero(2);
    m.set(0, 0, a.clone());
    m.set(0, 1, b.clone());
    m.set(1, 0, c.clone());
    m.set(1, 1, d.clone());
    m
}

/// Checks one random instance; `Ok(None)` on success, otherwise a
/// description of the failing instance.
pub fn verify_relation<R: Rng>(id: RelationId, alg: &MatrixAlgebra, rng: &mut R) -> Result<Option<String>> {
    use RelationId::*;
    let shape = alg.shape();
    let (m, n) = (shape.m, shape.n);
    let x1 = random_unimodular(m, rng);
    let y1 = if matches!(alg.spec, FamilySpec::Q { .. } | FamilySpec::QTilde { .. }) {
        x1.clone()
    } else {
        random_unimodular(n, rng)
    };
    let x2 = random_unimodular(m, rng);
    let y2 = random_unimodular(n, rng);
    let l1 = random_lambda(rng);
    let l2 = random_lambda(rng);
    let a1 = random_unimodular(2, rng);
    let a2 = random_unimodular(2, rng);
    let minus_one = Scalar::from_integer(-1);
    let checks: Vec<(LinearMap, LinearMap)> = match id {
        AdComposition => alloc::vec![(
            ad(alg, &x1, &y1)?.compose(&ad(alg, &x2, &y2)?)?,
            ad(alg, &x1.mul(&x2), &y1.mul(&y2))?,
        )],
        JComposition => alloc::vec![(j(alg, &l1)?.compose(&j(alg, &l2)?)?, j(alg, &(&l1 * &l2))?)],
        TauSquared => alloc::vec![(pow(&concrete(Generator::Tau, alg)?, 2), j(alg, &minus_one)?)],
        TauFourth => alloc::vec![(pow(&concrete(Generator::Tau, alg)?, 4), LinearMap::identity(alg.dim()))],
        PiSquared => alloc::vec![(pow(&concrete(Generator::Pi, alg)?, 2), LinearMap::identity(alg.dim()))],
        RhoComposition => alloc::vec![(rho(alg, &a1.mul(&a2))?, rho(alg, &a1)?.compose(&rho(alg, &a2)?)?)],
        AdJ => {
            let a = ad(alg, &x1, &y1)?;
            let jl = j(alg, &l1)?;
            alloc::vec![(a.compose(&jl)?, jl.compose(&a)?)]
        }
        AdTau => {
            let tau = concrete(Generator::Tau, alg)?;
            alloc::vec![(
                ad(alg, &x1, &y1)?.compose(&tau)?,
                tau.compose(&ad(alg, &inv_t(&x1), &inv_t(&y1))?)?,
            )]
        }
        JTau => {
            let tau = concrete(Generator::Tau, alg)?;
            let inv = l1.inv().expect("nonzero");
            alloc::vec![(j(alg, &l1)?.compose(&tau)?, tau.compose(&j(alg, &inv)?)?)]
        }
        AdPi => {
            let pi = concrete(Generator::Pi, alg)?;
            alloc::vec![(ad(alg, &x1, &y1)?.compose(&pi)?, pi.compose(&ad(alg, &y1, &x1)?)?)]
        }
        JPi => {
            let pi = concrete(Generator::Pi, alg)?;
            let inv = l1.inv().expect("nonzero");
            alloc::vec![(j(alg, &l1)?.compose(&pi)?, pi.compose(&j(alg, &inv)?)?)]
        }
        TauPi => {
            let tau = concrete(Generator::Tau, alg)?;
            let pi = concrete(Generator::Pi, alg)?;
            let lhs = tau.compose(&pi)?;
            alloc::vec![
                (lhs.clone(), pi.compose(&tau)?.compose(&j(alg, &minus_one)?)?),
                (lhs, pi.compose(&pow(&tau, 3))?),
            ]
        }
        AdRho => {
            let a = ad(alg, &x1, &y1)?;
            let r = rho(alg, &a1)?;
            alloc::vec![(a.compose(&r)?, r.compose(&a)?)]
        }
        RhoPi => {
            let pi = concrete(Generator::Pi, alg)?;
            let swapped = dense2(a1.get(1, 1), a1.get(1, 0), a1.get(0, 1), a1.get(0, 0));
            alloc::vec![(rho(alg, &a1)?.compose(&pi)?, pi.compose(&rho(alg, &swapped)?)?)]
        }
        SigmaQSquared => alloc::vec![(pow(&concrete(Generator::SigmaQ, alg)?, 2), j(alg, &minus_one)?)],
        SigmaQFourth => {
            alloc::vec![(
                pow(&concrete(Generator::SigmaQ, alg)?, 4),
                LinearMap::identity(alg.dim())
            )]
        }
        SigmaQAd => {
            let s = concrete(Generator::SigmaQ, alg)?;
            let xt = inv_t(&x1);
            alloc::vec![(s.compose(&ad(alg, &x1, &x1)?)?, ad(alg, &xt, &xt)?.compose(&s)?)]
        }
    };
    for (lhs, rhs) in checks {
        if lhs != rhs {
            return Ok(Some(format!(
                "{} fails on {} (lambda = {l1}, lambda2 = {l2})",
                id.statement(),
                alg.spec
            )));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub name: String,
    pub statement: String,
    pub algebra: String,
    pub instances: usize,
    pub passed: usize,
    pub first_failure: Option<String>,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.passed == self.instances
    }
}

/// Runs every applicable relation on `instances` seeded random
/// instantiations. Each relation draws from its own stream so reports do
/// not depend on which relations run.
pub fn relation_suite(alg: &MatrixAlgebra, seed: u64, instances: usize) -> Result<Vec<RelationReport>> {
    let mut out = Vec::new();
    for (k, id) in relations_for(&alg.spec).into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(k as u64 + 1);
        let mut passed = 0;
        let mut first_failure = None;
        for _ in 0..instances {
            match verify_relation(id, alg, &mut rng)? {
                None => passed += 1,
                Some(msg) => {
                    first_failure.get_or_insert(msg);
                }
            }
        }
        out.push(RelationReport {
            name: id.name().to_string(),
            statement: id.statement().to_string(),
            algebra: alg.spec.to_string(),
            instances,
            passed,
            first_failure,
        });
    }
    Ok(out)
}

/// Whether ρ at random unimodular parameters preserves the bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoFinding {
    pub algebra: String,
    pub instances: usize,
    pub homomorphisms: usize,
    /// A failing parameter set `(a, b, c, d)` and basis pair, if any.
    pub counterexample: Option<String>,
}

pub fn rho_homomorphism_finding(alg: &MatrixAlgebra, seed: u64, instances: usize) -> Result<RhoFinding> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut homomorphisms = 0;
    let mut counterexample = None;
    for _ in 0..instances {
        let a = random_unimodular(2, &mut rng);
        let v = [a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1)].map(Clone::clone);
        let fam: EndoFamily = generator(&Generator::Rho(super::RhoParams::Values(v.clone())), alg)?;
        let report = fam.is_homomorphism(alg.algebra(), &Default::default())?;
        match report.violation {
            None => homomorphisms += 1,
            Some(viol) => {
                counterexample.get_or_insert_with(|| {
                    let labels = alg.algebra().space().labels();
                    format!(
                        "rho({},{},{},{}) on [{}, {}]: sigma of bracket = {}, bracket of images = {}",
                        v[0],
                        v[1],
                        v[2],
                        v[3],
                        labels[viol.i],
                        labels[viol.j],
                        viol.lhs.describe(labels),
                        viol.rhs.describe(labels)
                    )
                });
            }
        }
    }
    Ok(RhoFinding {
        algebra: alg.spec.to_string(),
        instances,
        homomorphisms,
        counterexample,
    })
}
