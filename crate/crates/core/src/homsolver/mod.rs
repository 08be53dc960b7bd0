//! Hom-Jacobi residuals, the linear space of all even maps satisfying the
//! twisted Jacobi identity, constraint extraction for parametrized
//! families, a small polynomial solver, and the end-to-end verdict.

mod constraints;
mod families;
mod report;
mod solve;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

pub use constraints::{family_constraints, multiplicativity_constraints, triple_constraints, ConstraintSet};
pub use families::{cartan_diagonal_family, named_triples, NamedTriple};
pub use report::{
    analyze, families_for, reproduce_main_theorem, solve_family, FamilyOutcome, FamilyResult, HomReport, ReportOptions,
    TripleResult, Verdict, TOOL_VERSION,
};
pub use solve::{solve_constraints, Solution, SolveOutcome};

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};
use crate::superalgebra::SuperAlgebra;
use crate::superlinear::{echelonize, solution_from_echelon, Echelon, LinearMap, SparseVec, Vector};

/// Runs `f` over `items`, in parallel when the `parallel` feature is on.
/// Results keep the input order.
pub(crate) fn ordered_map<I: Sync, T: Send>(items: &[I], f: impl Fn(&I) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// All basis triples `i ≤ j ≤ k` in lexicographic order. The twisted
/// Jacobi sum is graded-alternating in its arguments, so these cover every
/// ordered triple.
pub fn basis_triples(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..dim {
        for j in i..dim {
            for k in j..dim {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// `(−1)^{|x||z|}[σx,[y,z]] + (−1)^{|y||x|}[σy,[z,x]] + (−1)^{|z||y|}[σz,[x,y]]`
/// on basis vectors `b_i, b_j, b_k`.
pub fn hom_jacobi_residual<T: Coeff>(
    g: &SuperAlgebra,
    sigma: &LinearMap<T>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<SparseVec<T>> {
    sigma.check_even(g.space(), g.space())?;
    for idx in [i, j, k] {
        if idx >= g.dim() {
            return Err(Error::IndexOutOfRange {
                index: idx,
                bound: g.dim(),
            });
        }
    }
    residual_unchecked(g, sigma, i, j, k)
}

pub(crate) fn residual_unchecked<T: Coeff>(
    g: &SuperAlgebra,
    sigma: &LinearMap<T>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<SparseVec<T>> {
    let args = [i, j, k].map(|t| g.basis_vector(t).lift::<T>());
    g.twisted_jacobi(
        [sigma.column(i), sigma.column(j), sigma.column(k)],
        [&args[0], &args[1], &args[2]],
        [g.parity(i), g.parity(j), g.parity(k)],
    )
}

/// The residual on arbitrary homogeneous vectors.
pub fn hom_jacobi_residual_vectors<T: Coeff>(
    g: &SuperAlgebra,
    sigma: &LinearMap<T>,
    args: [&Vector; 3],
) -> Result<SparseVec<T>> {
    sigma.check_even(g.space(), g.space())?;
    let mut parities = [crate::superlinear::Parity::Even; 3];
    for (p, v) in parities.iter_mut().zip(args) {
        v.check_dim(g.dim())?;
        *p = g
            .space()
            .parity_of(v)
            .ok_or_else(|| Error::Grading("residual arguments must be homogeneous".into()))?;
    }
    let images = args.map(|v| sigma.apply_scalar(v));
    let (sx, sy, sz) = (images[0].clone()?, images[1].clone()?, images[2].clone()?);
    let lifted = args.map(|v| v.lift::<T>());
    g.twisted_jacobi([&sx, &sy, &sz], [&lifted[0], &lifted[1], &lifted[2]], parities)
}

/// Unknowns of an even map: the entries `σ_{a,x}` with `|a| = |x|`.
struct EvenEntries {
    dim: usize,
    index: Vec<Option<usize>>,
    pairs: Vec<(usize, usize)>,
}

impl EvenEntries {
    fn new(g: &SuperAlgebra) -> Self {
        let dim = g.dim();
        let mut index = alloc::vec![None; dim * dim];
        let mut pairs = Vec::new();
        for x in 0..dim {
            for a in 0..dim {
                if g.parity(a) == g.parity(x) {
                    index[a * dim + x] = Some(pairs.len());
                    pairs.push((a, x));
                }
            }
        }
        EvenEntries { dim, index, pairs }
    }

    fn of(&self, a: usize, x: usize) -> usize {
        self.index[a * self.dim + x].expect("even entry")
    }
}

/// The linear equations in the entries of σ contributed by one triple,
/// keyed by output coordinate.
fn triple_equations(g: &SuperAlgebra, unknowns: &EvenEntries, (i, j, k): (usize, usize, usize)) -> Vec<Vector> {
    let dim = g.dim();
    let p = [g.parity(i), g.parity(j), g.parity(k)];
    let roles = [
        (i, j, k, crate::superlinear::Parity::koszul(p[0], p[2])),
        (j, k, i, crate::superlinear::Parity::koszul(p[1], p[0])),
        (k, i, j, crate::superlinear::Parity::koszul(p[2], p[1])),
    ];
    let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for (x, y, z, sign) in roles {
        let w = g.bracket_basis(y, z);
        if w.is_zero() {
            continue;
        }
        let sign = Scalar::from_integer(sign);
        for a in (0..dim).filter(|&a| g.parity(a) == g.parity(x)) {
            let u = unknowns.of(a, x);
            for (l, wl) in w.iter() {
                let c = &sign * wl;
                for (out, v) in g.bracket_basis(a, l).iter() {
                    let entry = rows.entry(out).or_default().entry(u).or_insert_with(Scalar::zero);
                    *entry += &(&c * v);
                }
            }
        }
    }
    let n = unknowns.pairs.len();
    rows.into_values()
        .map(|r| Vector::from_entries(n, r.into_iter().filter(|(_, c)| !c.is_zero())).expect("in range"))
        .filter(|v| !v.is_zero())
        .collect()
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

const CHUNK: usize = 512;

/// A basis, in reduced row-echelon form over the entries of σ, of all
/// even maps satisfying the twisted Jacobi identity on every basis triple.
///
/// The identity is linear in σ. Unknowns split into blocks that no
/// equation couples; each block is solved on its own and stops taking
/// equations once only the identity's share of the kernel is left.
pub fn hom_jacobi_space(g: &SuperAlgebra) -> Vec<LinearMap> {
    let dim = g.dim();
    let unknowns = EvenEntries::new(g);
    let n = unknowns.pairs.len();
    let triples = basis_triples(dim);
    let chunks: Vec<&[(usize, usize, usize)]> = triples.chunks(CHUNK).collect();

    let mut parent: Vec<usize> = (0..n).collect();
    for supports in ordered_map(&chunks, |chunk| {
        chunk
            .iter()
            .flat_map(|&t| triple_equations(g, &unknowns, t))
            .map(|v| v.iter().map(|(u, _)| u).collect::<Vec<_>>())
            .collect::<Vec<_>>()
    }) {
        for s in supports {
            let r = find(&mut parent, s[0]);
            for &u in &s[1..] {
                let q = find(&mut parent, u);
                if q != r {
                    parent[q] = r;
                }
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in 0..n {
        let r = find(&mut parent, u);
        blocks.entry(r).or_default().push(u);
    }
    // local coordinates inside each block
    let mut block_of = alloc::vec![0usize; n];
    let mut local = alloc::vec![0usize; n];
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (b, (_, us)) in blocks.into_iter().enumerate() {
        for (pos, &u) in us.iter().enumerate() {
            block_of[u] = b;
            local[u] = pos;
        }
        members.push(us);
    }
    let mut echelons: Vec<Echelon> = members.iter().map(|us| Echelon::new(us.len())).collect();
    let caps: Vec<usize> = members
        .iter()
        .map(|us| {
            let diagonal = us.iter().any(|&u| unknowns.pairs[u].0 == unknowns.pairs[u].1);
            us.len() - usize::from(diagonal)
        })
        .collect();
    let mut open = (0..members.len()).filter(|&b| echelons[b].rank() < caps[b]).count();

    for chunk in &chunks {
        if open == 0 {
            break;
        }
        let eqs = ordered_map(chunk, |&t| triple_equations(g, &unknowns, t));
        for v in eqs.into_iter().flatten() {
            let b = block_of[v.leading().expect("nonzero").0];
            if echelons[b].rank() >= caps[b] {
                continue;
            }
            let lv =
                Vector::from_entries(members[b].len(), v.iter().map(|(u, c)| (local[u], c.clone()))).expect("in range");
            if echelons[b].insert(&lv).expect("dimension").is_some() && echelons[b].rank() == caps[b] {
                open -= 1;
            }
        }
    }

    let mut kernel = Vec::new();
    for (b, e) in echelons.iter().enumerate() {
        if let crate::superlinear::LinearSolution::Solutions { kernel: ks, .. } =
            solution_from_echelon(e, members[b].len())
        {
            for kv in ks {
                kernel.push(
                    Vector::from_entries(n, kv.iter().map(|(p, c)| (members[b][p], c.clone()))).expect("in range"),
                );
            }
        }
    }
    let basis = if kernel.is_empty() {
        Vec::new()
    } else {
        echelonize(&kernel).expect("dimension")
    };
    basis
        .into_iter()
        .map(|v| {
            let mut m = LinearMap::zero(dim, dim);
            for (u, c) in v.iter() {
                let (a, x) = unknowns.pairs[u];
                m.set(a, x, c.clone());
            }
            m
        })
        .collect()
}

/// Whether `sigma` lies in the span of `basis`.
pub fn in_span(basis: &[LinearMap], sigma: &LinearMap) -> bool {
    let flatten = |m: &LinearMap| {
        let d = m.target_dim();
        Vector::from_entries(d * m.source_dim(), m.triples().map(|(r, c, v)| (c * d + r, v.clone()))).expect("in range")
    };
    let mut e = Echelon::new(sigma.source_dim() * sigma.target_dim());
    for b in basis {
        e.insert(&flatten(b)).expect("dimension");
    }
    e.contains(&flatten(sigma))
}
