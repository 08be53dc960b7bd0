//! Re-derivation of a built algebra's table from its realization.

use superhom_core::cartan_families::CartanAlgebra;
use superhom_core::matrix_families::MatrixAlgebra;
use superhom_core::BuiltAlgebra;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub pairs_checked: usize,
    /// First pair whose recomputed bracket disagrees with the table.
    pub failure: Option<String>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

fn check_pairs(dim: usize, mut pair: impl FnMut(usize, usize) -> Option<String>) -> ClosureReport {
    let mut checked = 0;
    for i in 0..dim {
        for j in i..dim {
            checked += 1;
            if let Some(f) = pair(i, j) {
                return ClosureReport {
                    pairs_checked: checked,
                    failure: Some(f),
                };
            }
        }
    }
    ClosureReport {
        pairs_checked: checked,
        failure: None,
    }
}

/// Recomputes every `[b_i, b_j]` as a matrix supercommutator and checks it
/// lies in the span with the tabulated coordinates.
fn matrix_closure(alg: &MatrixAlgebra) -> ClosureReport {
    let g = alg.algebra();
    check_pairs(g.dim(), |i, j| {
        let m = alg.rep(i).supercommutator(&alg.rep(j));
        match alg.coords(&m) {
            Ok(v) if &v == g.bracket_basis(i, j) => None,
            Ok(_) => Some(format!("[{}, {}] disagrees with the table", g.label(i), g.label(j))),
            Err(e) => Some(format!("[{}, {}]: {e}", g.label(i), g.label(j))),
        }
    })
}

/// Recomputes every `[b_i, b_j]` as a bracket of superderivations.
fn cartan_closure(alg: &CartanAlgebra) -> ClosureReport {
    let g = alg.algebra();
    check_pairs(g.dim(), |i, j| {
        let d = alg.derivation(i).bracket(&alg.derivation(j));
        match d.and_then(|d| alg.to_coords(&d)) {
            Ok(v) if &v == g.bracket_basis(i, j) => None,
            Ok(_) => Some(format!("[{}, {}] disagrees with the table", g.label(i), g.label(j))),
            Err(e) => Some(format!("[{}, {}]: {e}", g.label(i), g.label(j))),
        }
    })
}

/// `None` for algebras loaded from a table, which have no realization.
pub fn closure(built: &BuiltAlgebra) -> Option<ClosureReport> {
    match built {
        BuiltAlgebra::Matrix(m) => Some(matrix_closure(m)),
        BuiltAlgebra::Cartan(c) => Some(cartan_closure(c)),
        BuiltAlgebra::Loaded(_) => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use superhom_core::AlgebraSpec;

    #[test]
    fn built_tables_match_their_realizations() {
        for s in ["gl:1|1", "psl:2|2", "Q:2", "P:2", "osp:3|2", "W:3", "S:3", "H:4"] {
            let b = s.parse::<AlgebraSpec>().unwrap().build().unwrap();
            let r = closure(&b).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failure);
            assert_eq!(r.pairs_checked, b.algebra().dim() * (b.algebra().dim() + 1) / 2);
        }
    }
}
