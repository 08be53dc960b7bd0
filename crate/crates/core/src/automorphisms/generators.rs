use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{descend_to_quotient, EndoFamily};
use crate::error::{Error, Result};
use crate::matrix_families::{gamma, Block, DenseMat, FamilySpec, MatrixAlgebra, MatrixElement, MatrixShape};
use crate::scalars::{Poly, Scalar};
use crate::superlinear::{LinearMap, SparseVec};

/// The scaling parameter of ȷ(λ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lambda {
    /// λ and its inverse as two parameters tied by `λμ − 1 = 0`.
    Symbolic {
        lambda: String,
        inverse: String,
    },
    Value(Scalar),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum RhoParams {
    /// Parameter names for `(a, b, c, d)`, tied by `ad − bc − 1 = 0`.
    Symbolic([String; 4]),
    Values([Scalar; 4]),
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::large_enum_variant)]
pub enum Generator {
    /// Conjugation by `diag(X, Y)` with `det X = det Y = 1`.
    Ad {
        x: DenseMat,
        y: DenseMat,
    },
    /// Conjugation by `diag(γ_m, I)` on osp(m|2n) with m even.
    AdGamma,
    J(Lambda),
    Tau,
    Pi,
    Rho(RhoParams),
    SigmaQ,
}

impl Generator {
    pub fn j_symbolic() -> Self {
        Generator::J(Lambda::Symbolic {
            lambda: "lambda".into(),
            inverse: "mu".into(),
        })
    }

    pub fn j_value(v: Scalar) -> Self {
        Generator::J(Lambda::Value(v))
    }

    pub fn rho_symbolic() -> Self {
        Generator::Rho(RhoParams::Symbolic(["a".into(), "b".into(), "c".into(), "d".into()]))
    }

    pub fn rho_values(v: [i64; 4]) -> Self {
        Generator::Rho(RhoParams::Values(v.map(Scalar::from_integer)))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Generator::Ad { .. } => "Ad",
            Generator::AdGamma => "Ad:gamma",
            Generator::J(_) => "j",
            Generator::Tau => "tau",
            Generator::Pi => "pi",
            Generator::Rho(_) => "rho",
            Generator::SigmaQ => "sigma_q",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Ad { .. } => write!(f, "Ad(X,Y)"),
            Generator::AdGamma => write!(f, "Ad(gamma,I)"),
            Generator::J(Lambda::Symbolic { lambda, .. }) => write!(f, "j({lambda})"),
            Generator::J(Lambda::Value(v)) => write!(f, "j({v})"),
            Generator::Tau => write!(f, "tau"),
            Generator::Pi => write!(f, "pi"),
            Generator::Rho(RhoParams::Symbolic(n)) => write!(f, "rho({},{},{},{})", n[0], n[1], n[2], n[3]),
            Generator::Rho(RhoParams::Values(v)) => write!(f, "rho({},{},{},{})", v[0], v[1], v[2], v[3]),
            Generator::SigmaQ => write!(f, "sigma_q"),
        }
    }
}

/// A generator raised to a power, as written on the command line:
/// `j:lambda`, `j:7`, `tau`, `pi`, `rho:a,b,c,d`, `rho:1,2,0,1`,
/// `sigma_q`, `sigma_q^2`, `Ad:gamma`, `id`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSpec {
    /// `None` for the identity.
    pub generator: Option<Generator>,
    pub power: u32,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (base, power) = match s.rsplit_once('^') {
            Some((b, p)) => (
                b,
                p.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{s}`")))?,
            ),
            None => (s, 1),
        };
        let (kind, arg) = match base.split_once(':') {
            Some((k, a)) => (k, Some(a)),
            None => (base, None),
        };
        let generator = match (kind, arg) {
            ("id", None) => None,
            ("tau", None) => Some(Generator::Tau),
            ("pi", None) => Some(Generator::Pi),
            ("sigma_q", None) => Some(Generator::SigmaQ),
            ("Ad", Some("gamma")) => Some(Generator::AdGamma),
            ("j", Some(a)) if is_identifier(a) => Some(Generator::J(Lambda::Symbolic {
                lambda: a.to_string(),
                inverse: format!("{a}_inv"),
            })),
            ("j", Some(a)) => {
                let v: Scalar = a.parse()?;
                if v.is_zero() {
                    return Err(Error::Parse("j requires a nonzero scalar".into()));
                }
                Some(Generator::j_value(v))
            }
            ("rho", Some(a)) => {
                let parts: Vec<&str> = a.split(',').map(str::trim).collect();
                if parts.len() != 4 {
                    return Err(Error::Parse(format!("rho takes four entries, got `{a}`")));
                }
                if parts.iter().all(|p| is_identifier(p)) {
                    Some(Generator::Rho(RhoParams::Symbolic(
                        [parts[0], parts[1], parts[2], parts[3]].map(String::from),
                    )))
                } else {
                    let mut v = Vec::with_capacity(4);
                    for p in parts {
                        v.push(p.parse::<Scalar>()?);
                    }
                    let v: [Scalar; 4] = v.try_into().expect("four entries");
                    Some(Generator::Rho(RhoParams::Values(v)))
                }
            }
            _ => return Err(Error::Parse(format!("unknown generator `{s}`"))),
        };
        Ok(GeneratorSpec { generator, power })
    }
}

/// A linear map on gl(m|n) in flat coordinates, given entry by entry.
fn flat_map(shape: MatrixShape, mut image: impl FnMut(usize, usize) -> Vec<(usize, usize, Poly)>) -> LinearMap<Poly> {
    let fd = shape.flat_dim();
    let cols = (0..fd)
        .map(|k| {
            let (r, c) = shape.unflat(k);
            let mut v = SparseVec::zero(fd);
            for (r2, c2, p) in image(r, c) {
                v.add_at(shape.flat(r2, c2), &p);
            }
            v
        })
        .collect();
    LinearMap::from_columns(fd, cols).expect("flat dimensions agree")
}

fn konst(v: i64) -> Poly {
    Poly::constant(Scalar::from_integer(v))
}

fn conjugation(shape: MatrixShape, x: &DenseMat, y: &DenseMat) -> Result<LinearMap<Poly>> {
    let not_invertible = || Error::NotUnimodular("singular block".into());
    let m = DenseMat::block_diag(x, y);
    let m_inv = DenseMat::block_diag(
        &x.inverse().ok_or_else(not_invertible)?,
        &y.inverse().ok_or_else(not_invertible)?,
    );
    Ok(flat_map(shape, |r, c| {
        let e = m.mul(&MatrixElement::unit(shape, r, c)).mul(&m_inv);
        e.entries()
            .map(|(r2, c2, v)| (r2, c2, Poly::constant(v.clone())))
            .collect()
    }))
}

/// `Ψ(E_pq) = J E_qp J` with `J = [[0, 1], [−1, 0]]`, as (row, col, sign).
fn psi_unit(p: usize, q: usize) -> Vec<(usize, usize, i64)> {
    let j = |r: usize, s: usize| -> i64 {
        match (r, s) {
            (0, 1) => 1,
            (1, 0) => -1,
            _ => 0,
        }
    };
    let mut out = Vec::new();
    for r in 0..2 {
        for s in 0..2 {
            let v = j(r, q) * j(p, s);
            if v != 0 {
                out.push((r, s, v));
            }
        }
    }
    out
}

/// The generator's action on gl(m|n) in flat coordinates, with its
/// parameters and side relations.
pub fn gl_action(gen: &Generator, shape: MatrixShape) -> Result<(LinearMap<Poly>, Vec<String>, Vec<Poly>)> {
    let (m, n) = (shape.m, shape.n);
    let wrong = |reason: &str| Error::WrongAlgebra {
        kind: gen.kind().into(),
        algebra: format!("gl({m}|{n})"),
        reason: reason.into(),
    };
    match gen {
        Generator::Ad { x, y } => {
            if x.size() != m || y.size() != n {
                return Err(wrong("block sizes do not match"));
            }
            for (name, blk) in [("X", x), ("Y", y)] {
                let d = blk.det();
                if !d.is_one() {
                    return Err(Error::NotUnimodular(format!("det {name} = {d}")));
                }
            }
            Ok((conjugation(shape, x, y)?, Vec::new(), Vec::new()))
        }
        Generator::AdGamma => {
            if m % 2 == 1 {
                return Err(wrong("requires an even orthogonal block"));
            }
            Ok((
                conjugation(shape, &gamma(m), &DenseMat::identity(n))?,
                Vec::new(),
                Vec::new(),
            ))
        }
        Generator::J(lambda) => {
            let (l, mu, params, rels) = match lambda {
                Lambda::Symbolic { lambda, inverse } => {
                    let ring = Poly::ring(&[lambda.as_str(), inverse.as_str()]);
                    let l = Poly::variable(&ring, lambda)?;
                    let mu = Poly::variable(&ring, inverse)?;
                    let rel = l.mul(&mu).sub(&Poly::constant_in(&ring, Scalar::one()));
                    (l, mu, alloc::vec![lambda.clone(), inverse.clone()], alloc::vec![rel])
                }
                Lambda::Value(v) => {
                    let inv = v.inv().ok_or_else(|| Error::InvalidAssignment("lambda = 0".into()))?;
                    (Poly::constant(v.clone()), Poly::constant(inv), Vec::new(), Vec::new())
                }
            };
            let map = flat_map(shape, |r, c| {
                let f = match shape.block(r, c) {
                    Block::A | Block::D => konst(1),
                    Block::B => l.clone(),
                    Block::C => mu.clone(),
                };
                alloc::vec![(r, c, f)]
            });
            Ok((map, params, rels))
        }
        Generator::Tau => Ok((
            flat_map(shape, |r, c| {
                let sign = if shape.block(r, c) == Block::C { 1 } else { -1 };
                alloc::vec![(c, r, konst(sign))]
            }),
            Vec::new(),
            Vec::new(),
        )),
        Generator::Pi => {
            if m != n {
                return Err(wrong("requires equal block sizes"));
            }
            let s = 2 * n;
            Ok((
                flat_map(shape, |r, c| alloc::vec![((r + n) % s, (c + n) % s, konst(1))]),
                Vec::new(),
                Vec::new(),
            ))
        }
        Generator::Rho(params) => {
            if m != 2 || n != 2 {
                return Err(wrong("defined on gl(2|2) and its subquotients only"));
            }
            let (coeffs, names, rels): ([Poly; 4], Vec<String>, Vec<Poly>) = match params {
                RhoParams::Symbolic(names) => {
                    let ring = Poly::ring(&[
                        names[0].as_str(),
                        names[1].as_str(),
                        names[2].as_str(),
                        names[3].as_str(),
                    ]);
                    let v = [0, 1, 2, 3].map(|i| Poly::variable(&ring, &names[i]).expect("declared"));
                    let det = v[0].mul(&v[3]).sub(&v[1].mul(&v[2]));
                    let rel = det.sub(&Poly::constant_in(&ring, Scalar::one()));
                    (v, names.to_vec(), alloc::vec![rel])
                }
                RhoParams::Values(v) => {
                    let det = &(&v[0] * &v[3]) - &(&v[1] * &v[2]);
                    if !det.is_one() {
                        return Err(Error::NotUnimodular(format!("ad - bc = {det}")));
                    }
                    (v.clone().map(Poly::constant), Vec::new(), Vec::new())
                }
            };
            let [a, b, c, d] = coeffs;
            let map = flat_map(shape, |r, col| match shape.block(r, col) {
                Block::A | Block::D => alloc::vec![(r, col, konst(1))],
                // B ↦ aB + cΨ(B) in the C block
                Block::B => {
                    let (p, q) = (r, col - 2);
                    let mut out = alloc::vec![(r, col, a.clone())];
                    for (r2, c2, s) in psi_unit(p, q) {
                        out.push((2 + r2, c2, c.scale(&Scalar::from_integer(s))));
                    }
                    out
                }
                // C ↦ bΨ(C) in the B block + dC
                Block::C => {
                    let (p, q) = (r - 2, col);
                    let mut out = alloc::vec![(r, col, d.clone())];
                    for (r2, c2, s) in psi_unit(p, q) {
                        out.push((r2, 2 + c2, b.scale(&Scalar::from_integer(s))));
                    }
                    out
                }
            });
            Ok((map, names, rels))
        }
        Generator::SigmaQ => {
            if m != n {
                return Err(wrong("requires equal block sizes"));
            }
            Ok((sigma_q_action(shape, -1), Vec::new(), Vec::new()))
        }
    }
}

/// `(A, B) ↦ (s·Aᵗ, ζBᵗ)` on the Q̃ block pattern, extended blockwise to
/// gl(n|n). `s = −1` gives the automorphism.
pub(crate) fn sigma_q_action(shape: MatrixShape, even_sign: i64) -> LinearMap<Poly> {
    let n = shape.n;
    let zeta = Poly::constant(Scalar::zeta());
    flat_map(shape, |r, c| {
        let (br, lr) = (r / n, r % n);
        let (bc, lc) = (c / n, c % n);
        // transpose inside the block, keeping the block position
        let (r2, c2) = (br * n + lc, bc * n + lr);
        let f = if br == bc { konst(even_sign) } else { zeta.clone() };
        alloc::vec![(r2, c2, f)]
    })
}

fn applies(gen: &Generator, spec: &FamilySpec) -> core::result::Result<(), &'static str> {
    match (gen, spec) {
        (Generator::SigmaQ, FamilySpec::Q { .. } | FamilySpec::QTilde { .. }) => Ok(()),
        (Generator::SigmaQ, _) => Err("defined on Q and Q~ only"),
        (Generator::Rho(_), FamilySpec::Gl { m: 2, n: 2 } | FamilySpec::Psl { n: 2 }) => Ok(()),
        (Generator::Rho(_), _) => Err("defined on gl(2|2) and psl(2|2) only"),
        (Generator::AdGamma, FamilySpec::Osp { m, .. }) if m % 2 == 0 => Ok(()),
        (Generator::AdGamma, _) => Err("defined on osp(m|2n) with m even"),
        _ => Ok(()),
    }
}

/// The generator as an even map on `alg`, transported through the quotient
/// for psl and Q.
pub fn generator(gen: &Generator, alg: &MatrixAlgebra) -> Result<EndoFamily> {
    let wrong = |reason: String| Error::WrongAlgebra {
        kind: gen.kind().into(),
        algebra: alg.spec.to_string(),
        reason,
    };
    applies(gen, &alg.spec).map_err(|r| wrong(r.into()))?;
    let (action, params, rels) = match gl_action(gen, alg.shape()) {
        Err(Error::WrongAlgebra { reason, .. }) => return Err(wrong(reason)),
        other => other?,
    };
    let on_cover = alg.restrict_to_cover(&action).map_err(|e| match e {
        Error::NotClosed(_) => wrong("does not preserve the subalgebra".into()),
        e => e,
    })?;
    let cover = EndoFamily::new(&alg.embedded.algebra, gen.to_string(), params, rels, on_cover)?;
    match &alg.quotient {
        Some(q) => descend_to_quotient(&cover, q, alg.algebra().name()),
        None => Ok(cover),
    }
}

impl GeneratorSpec {
    pub fn build(&self, alg: &MatrixAlgebra) -> Result<EndoFamily> {
        match &self.generator {
            None => Ok(EndoFamily::identity(alg.algebra())),
            Some(g) => Ok(generator(g, alg)?.power(self.power)),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.generator {
            None => write!(f, "id"),
            Some(g) => {
                match g {
                    Generator::J(Lambda::Symbolic { lambda, .. }) => write!(f, "j:{lambda}")?,
                    Generator::J(Lambda::Value(v)) => write!(f, "j:{v}")?,
                    Generator::Rho(RhoParams::Symbolic(n)) => write!(f, "rho:{},{},{},{}", n[0], n[1], n[2], n[3])?,
                    Generator::Rho(RhoParams::Values(v)) => write!(f, "rho:{},{},{},{}", v[0], v[1], v[2], v[3])?,
                    Generator::AdGamma => write!(f, "Ad:gamma")?,
                    g => write!(f, "{g}")?,
                }
                if self.power != 1 {
                    write!(f, "^{}", self.power)?;
                }
                Ok(())
            }
        }
    }
}
