//! The classical matrix superalgebras gl, sl, psl, P, Q̃, Q and osp, each
//! realized inside gl(m|n) with a fixed basis of matrix elements.

mod element;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

pub use element::{Block, DenseMat, MatrixElement, MatrixShape};

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Poly, Scalar};
use crate::superalgebra::SuperAlgebra;
use crate::superlinear::{quotient_construct, Frame, LinearMap, Quotient, SparseVec, SuperSpace, Vector};

/// A classical family together with its rank parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Gl {
        m: usize,
        n: usize,
    },
    Sl {
        m: usize,
        n: usize,
    },
    Psl {
        n: usize,
    },
    /// `P(k)`, realized in gl(k+1|k+1).
    P {
        k: usize,
    },
    /// `Q(k) = Q̃(k)/⟨I⟩`, realized in gl(k+1|k+1).
    Q {
        k: usize,
    },
    QTilde {
        k: usize,
    },
    /// `osp(m|2n)`; `n2` is the even size `2n`.
    Osp {
        m: usize,
        n2: usize,
    },
}

impl FamilySpec {
    pub fn shape(&self) -> MatrixShape {
        match *self {
            FamilySpec::Gl { m, n } | FamilySpec::Sl { m, n } => MatrixShape::new(m, n),
            FamilySpec::Psl { n } => MatrixShape::new(n, n),
            FamilySpec::P { k } | FamilySpec::Q { k } | FamilySpec::QTilde { k } => MatrixShape::new(k + 1, k + 1),
            FamilySpec::Osp { m, n2 } => MatrixShape::new(m, n2),
        }
    }

    /// Whether the family member is simple (gl and Q̃ are not).
    pub fn is_simple(&self) -> bool {
        !matches!(self, FamilySpec::Gl { .. } | FamilySpec::QTilde { .. })
    }

    pub fn check(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Inadmissible(format!("{self}: {why}")));
        match *self {
            FamilySpec::Gl { m, n } if m == 0 || n == 0 => bad("requires m, n ≥ 1"),
            FamilySpec::Sl { m, n } if m == 0 || n == 0 => bad("requires m, n ≥ 1"),
            FamilySpec::Sl { m, n } if m == n => bad("requires m ≠ n (use psl for equal blocks)"),
            FamilySpec::Psl { n } if n < 2 => bad("requires n ≥ 2"),
            FamilySpec::P { k } if k < 2 => bad("requires rank ≥ 2"),
            FamilySpec::Q { k } | FamilySpec::QTilde { k } if k < 2 => bad("requires rank ≥ 2"),
            FamilySpec::Osp { m, n2 } if m == 0 || n2 == 0 => bad("requires m ≥ 1 and 2n ≥ 2"),
            FamilySpec::Osp { n2, .. } if n2 % 2 == 1 => bad("the symplectic block size must be even"),
            _ => Ok(()),
        }
    }

    /// The algebra string accepted on the command line.
    pub fn spec_string(&self) -> String {
        match *self {
            FamilySpec::Gl { m, n } => format!("gl:{m}|{n}"),
            FamilySpec::Sl { m, n } => format!("sl:{m}|{n}"),
            FamilySpec::Psl { n } => format!("psl:{n}|{n}"),
            FamilySpec::P { k } => format!("P:{k}"),
            FamilySpec::Q { k } => format!("Q:{k}"),
            FamilySpec::QTilde { k } => format!("Qt:{k}"),
            FamilySpec::Osp { m, n2 } => format!("osp:{m}|{n2}"),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            FamilySpec::Gl { m, n } => write!(f, "gl({m}|{n})"),
            FamilySpec::Sl { m, n } => write!(f, "sl({m}|{n})"),
            FamilySpec::Psl { n } => write!(f, "psl({n}|{n})"),
            FamilySpec::P { k } => write!(f, "P({k})"),
            FamilySpec::Q { k } => write!(f, "Q({k})"),
            FamilySpec::QTilde { k } => write!(f, "Q~({k})"),
            FamilySpec::Osp { m, n2 } => write!(f, "osp({m}|{n2})"),
        }
    }
}

/// A subalgebra of gl(m|n) with a reduced row-echelon basis in flat
/// coordinates.
#[derive(Clone, Debug)]
pub struct Embedded {
    pub shape: MatrixShape,
    pub algebra: SuperAlgebra,
    pub frame: Frame,
}

impl Embedded {
    /// Spans `spanning`, checks bracket closure and tabulates the bracket.
    pub fn build(name: &str, shape: MatrixShape, spanning: &[MatrixElement]) -> Result<Self> {
        let flat: Vec<Vector> = spanning.iter().map(MatrixElement::to_flat).collect();
        let frame = Frame::span(shape.flat_dim(), &flat)?;
        let gl_space = SuperSpace::new(
            (0..shape.flat_dim()).map(|k| shape.flat_parity(k)).collect(),
            None,
            shape.labels(),
        )?;
        let mut parities = Vec::with_capacity(frame.dim());
        let mut labels = Vec::with_capacity(frame.dim());
        for r in frame.rows() {
            parities.push(
                gl_space
                    .parity_of(r)
                    .ok_or_else(|| Error::Grading(format!("{name}: spanning set is not homogeneous")))?,
            );
            labels.push(r.describe(gl_space.labels()));
        }
        let space = SuperSpace::new(parities, None, labels)?;
        let reps: Vec<MatrixElement> = frame
            .rows()
            .iter()
            .map(|r| MatrixElement::from_flat(shape, r))
            .collect();
        let algebra = SuperAlgebra::from_bracket_fn(name, space, |i, j| {
            frame
                .coords(&reps[i].supercommutator(&reps[j]).to_flat())
                .map_err(|_| Error::NotClosed(format!("{name}: [b{i}, b{j}] leaves the span")))
        })?;
        Ok(Embedded { shape, algebra, frame })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// Coordinates of a flat vector in the basis.
    pub fn coords<T: Coeff>(&self, flat: &SparseVec<T>) -> Result<SparseVec<T>> {
        self.frame.coords(flat)
    }

    /// Flat vector of a coordinate vector.
    pub fn to_flat<T: Coeff>(&self, v: &SparseVec<T>) -> SparseVec<T> {
        self.frame.embed(v)
    }
}

/// A classical superalgebra with its realization by matrices.
#[derive(Clone, Debug)]
pub struct MatrixAlgebra {
    pub spec: FamilySpec,
    /// The matrix algebra itself, or the cover for quotient families.
    pub embedded: Embedded,
    /// Present for psl and Q: the quotient of `embedded` by the identity.
    pub quotient: Option<Quotient>,
    algebra: SuperAlgebra,
}

impl MatrixAlgebra {
    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn shape(&self) -> MatrixShape {
        self.embedded.shape
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    /// Matrix representative of basis vector `i` (a coset representative for
    /// quotient families).
    pub fn rep(&self, i: usize) -> MatrixElement {
        let k = match &self.quotient {
            Some(q) => q.kept[i],
            None => i,
        };
        MatrixElement::from_flat(self.shape(), self.embedded.frame.row(k))
    }

    /// Representative of a coordinate vector.
    pub fn element(&self, v: &Vector) -> Result<MatrixElement> {
        let cover = match &self.quotient {
            Some(q) => q.lift(v)?,
            None => v.clone(),
        };
        Ok(MatrixElement::from_flat(self.shape(), &self.embedded.to_flat(&cover)))
    }

    /// Coordinates of a matrix (of its class for quotient families).
    pub fn coords(&self, x: &MatrixElement) -> Result<Vector> {
        if x.shape() != self.shape() {
            return Err(Error::SpaceMismatch {
                expected: self.shape().flat_dim(),
                found: x.shape().flat_dim(),
            });
        }
        let c = self.embedded.coords(&x.to_flat())?;
        match &self.quotient {
            Some(q) => q.project(&c),
            None => Ok(c),
        }
    }

    /// Flat vectors spanning the ideal divided out (empty unless quotient).
    pub fn ideal_flat(&self) -> Vec<Vector> {
        match &self.quotient {
            Some(q) => q.ideal_basis.iter().map(|v| self.embedded.to_flat(v)).collect(),
            None => Vec::new(),
        }
    }

    /// Transports a linear map on gl(m|n), given in flat coordinates, to the
    /// basis of the matrix algebra (of the cover for quotient families).
    /// Fails with [`Error::NotClosed`] when the subalgebra is not preserved.
    pub fn restrict_to_cover(&self, action: &LinearMap<Poly>) -> Result<LinearMap<Poly>> {
        let fd = self.shape().flat_dim();
        if action.source_dim() != fd || action.target_dim() != fd {
            return Err(Error::SpaceMismatch {
                expected: fd,
                found: action.source_dim(),
            });
        }
        let cols = self
            .embedded
            .frame
            .rows()
            .iter()
            .map(|row| self.embedded.coords(&action.apply_scalar(row)?))
            .collect::<Result<Vec<_>>>()?;
        LinearMap::from_columns(self.embedded.dim(), cols)
    }

    /// [`Self::restrict_to_cover`] followed by descent to the quotient, which
    /// fails with [`Error::DescentFailed`] when the ideal is not preserved.
    pub fn restrict_action(&self, action: &LinearMap<Poly>) -> Result<LinearMap<Poly>> {
        let on_cover = self.restrict_to_cover(action)?;
        match &self.quotient {
            Some(q) => q.descend(&on_cover),
            None => Ok(on_cover),
        }
    }
}

fn unit(shape: MatrixShape, r: usize, c: usize) -> MatrixElement {
    MatrixElement::unit(shape, r, c)
}

fn gl_spanning(shape: MatrixShape) -> Vec<MatrixElement> {
    (0..shape.flat_dim())
        .map(|k| {
            let (r, c) = shape.unflat(k);
            unit(shape, r, c)
        })
        .collect()
}

fn sl_spanning(shape: MatrixShape) -> Vec<MatrixElement> {
    let mut out: Vec<MatrixElement> = gl_spanning(shape)
        .into_iter()
        .filter(|e| e.entries().all(|(r, c, _)| r != c))
        .collect();
    for i in 1..shape.size() {
        let sign = if i < shape.m { -1 } else { 1 };
        out.push(MatrixElement::from_terms(shape, &[(0, 0, 1), (i, i, sign)]));
    }
    out
}

fn p_spanning(shape: MatrixShape) -> Vec<MatrixElement> {
    let n = shape.m;
    let mut out = Vec::new();
    // [[A, 0], [0, −Aᵗ]] with A ∈ sl_n
    for r in 0..n {
        for c in 0..n {
            if r != c {
                out.push(MatrixElement::from_terms(shape, &[(r, c, 1), (c + n, r + n, -1)]));
            }
        }
    }
    for i in 1..n {
        out.push(MatrixElement::from_terms(
            shape,
            &[(0, 0, 1), (i, i, -1), (n, n, -1), (i + n, i + n, 1)],
        ));
    }
    // B symmetric
    for r in 0..n {
        for c in r..n {
            if r == c {
                out.push(unit(shape, r, c + n));
            } else {
                out.push(MatrixElement::from_terms(shape, &[(r, c + n, 1), (c, r + n, 1)]));
            }
        }
    }
    // C antisymmetric
    for r in 0..n {
        for c in r + 1..n {
            out.push(MatrixElement::from_terms(shape, &[(r + n, c, 1), (c + n, r, -1)]));
        }
    }
    out
}

fn q_tilde_spanning(shape: MatrixShape) -> Vec<MatrixElement> {
    let n = shape.m;
    let mut out = Vec::new();
    for r in 0..n {
        for c in 0..n {
            out.push(MatrixElement::from_terms(shape, &[(r, c, 1), (r + n, c + n, 1)]));
        }
    }
    for r in 0..n {
        for c in 0..n {
            if r != c {
                out.push(MatrixElement::from_terms(shape, &[(r, c + n, 1), (r + n, c, 1)]));
            }
        }
    }
    for i in 1..n {
        out.push(MatrixElement::from_terms(
            shape,
            &[(0, n, 1), (n, 0, 1), (i, i + n, -1), (i + n, i, -1)],
        ));
    }
    out
}

/// `J = [[0, I], [−I, 0]]` of size `n2`.
pub fn symplectic_form(n2: usize) -> DenseMat {
    let h = n2 / 2;
    let mut j = DenseMat::zero(n2);
    for i in 0..h {
        j.set(i, i + h, Scalar::one());
        j.set(i + h, i, Scalar::from_integer(-1));
    }
    j
}

fn osp_spanning(shape: MatrixShape) -> Vec<MatrixElement> {
    let (m, n2) = (shape.m, shape.n);
    let j = symplectic_form(n2);
    let mut out = Vec::new();
    // so_m: antisymmetric A
    for r in 0..m {
        for c in r + 1..m {
            out.push(MatrixElement::from_terms(shape, &[(r, c, 1), (c, r, -1)]));
        }
    }
    // sp_2n: D = J S with S symmetric
    for p in 0..n2 {
        for q in p..n2 {
            let mut e = MatrixElement::zero(shape);
            for row in 0..n2 {
                // (J S)_{row, col} = Σ_k J_{row,k} S_{k,col}; S = E_pq + E_qp (or E_pp)
                let jp = j.get(row, p).clone();
                let jq = j.get(row, q).clone();
                if !jp.is_zero() {
                    e.add_at(m + row, m + q, &jp);
                }
                if p != q && !jq.is_zero() {
                    e.add_at(m + row, m + p, &jq);
                }
            }
            out.push(e);
        }
    }
    // odd part: B arbitrary, C = J Bᵗ
    for r in 0..m {
        for c in 0..n2 {
            let mut e = unit(shape, r, m + c);
            // (J Bᵗ)_{row, r} = J_{row, c}
            for row in 0..n2 {
                let v = j.get(row, c).clone();
                if !v.is_zero() {
                    e.add_at(m + row, r, &v);
                }
            }
            out.push(e);
        }
    }
    out
}

/// `γ_m = diag(−1, 1, …, 1)`, an orthogonal matrix of determinant −1
/// squaring to the identity.
pub fn gamma(m: usize) -> DenseMat {
    let mut g = DenseMat::identity(m);
    g.set(0, 0, Scalar::from_integer(-1));
    g
}

/// Builds a classical family member. Quotient families are built from their
/// cover and the canonical complement of the identity matrix.
pub fn build_classical(spec: FamilySpec) -> Result<MatrixAlgebra> {
    spec.check()?;
    let shape = spec.shape();
    let name = spec.to_string();
    let (spanning, quotient) = match spec {
        FamilySpec::Gl { .. } => (gl_spanning(shape), false),
        FamilySpec::Sl { .. } => (sl_spanning(shape), false),
        FamilySpec::Psl { .. } => (sl_spanning(shape), true),
        FamilySpec::P { .. } => (p_spanning(shape), false),
        FamilySpec::QTilde { .. } => (q_tilde_spanning(shape), false),
        FamilySpec::Q { .. } => (q_tilde_spanning(shape), true),
        FamilySpec::Osp { .. } => (osp_spanning(shape), false),
    };
    let cover_name = match spec {
        FamilySpec::Psl { n } => format!("sl({n}|{n})"),
        FamilySpec::Q { k } => format!("Q~({k})"),
        _ => name.clone(),
    };
    let embedded = Embedded::build(&cover_name, shape, &spanning)?;
    if !quotient {
        let algebra = embedded.algebra.clone().with_metadata("family", spec.spec_string());
        return Ok(MatrixAlgebra {
            spec,
            embedded,
            quotient: None,
            algebra,
        });
    }
    let id = embedded.coords(&MatrixElement::identity(shape).to_flat())?;
    let q = quotient_construct(embedded.algebra.space(), &[id])?;
    let cover = &embedded.algebra;
    let algebra = SuperAlgebra::from_bracket_fn(name, q.quotient_space.clone(), |a, b| {
        q.project(cover.bracket_basis(q.kept[a], q.kept[b]))
    })?
    .with_metadata("family", spec.spec_string());
    Ok(MatrixAlgebra {
        spec,
        embedded,
        quotient: Some(q),
        algebra,
    })
}

impl fmt::Display for MatrixAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.spec, self.dim())
    }
}
