use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::constraints::normalize_all;
use super::ConstraintSet;
use crate::scalars::univariate::{roots_in_field, UniPoly};
use crate::scalars::{Assignment, Poly, Scalar};
use crate::superlinear::{Echelon, Vector};

/// One branch of the solution set: each solved parameter is a polynomial
/// in the free ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub values: BTreeMap<String, Poly>,
    pub free: Vec<String>,
}

impl Solution {
    /// The assignment when no parameter is free.
    pub fn point(&self) -> Option<Assignment> {
        if !self.free.is_empty() {
            return None;
        }
        self.values
            .iter()
            .map(|(k, v)| v.as_constant().map(|c| (k.clone(), c)))
            .collect()
    }

    /// Values with the free parameters set as given.
    pub fn at(&self, free: &Assignment) -> Option<Assignment> {
        let mut out = free.clone();
        for (k, v) in &self.values {
            out.insert(k.clone(), v.evaluate(free).ok()?);
        }
        Some(out)
    }

    /// `a = 1, b = c` in parameter order; free parameters are omitted.
    pub fn describe(&self, order: &[String]) -> String {
        let parts: Vec<String> = order
            .iter()
            .filter_map(|p| self.values.get(p).map(|v| format!("{p} = {v}")))
            .collect();
        if parts.is_empty() {
            return "all parameters free".into();
        }
        parts.join(", ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The complete solution set; empty when the constraints are
    /// inconsistent.
    Solved(Vec<Solution>),
    /// The moves available ran out. `partial` lists branches that did
    /// resolve; `residual` the equations left on the first stuck branch.
    Undecided {
        partial: Vec<Solution>,
        residual: Vec<Poly>,
    },
}

impl SolveOutcome {
    pub fn is_decided(&self) -> bool {
        matches!(self, SolveOutcome::Solved(_))
    }

    pub fn solutions(&self) -> &[Solution] {
        match self {
            SolveOutcome::Solved(s) => s,
            SolveOutcome::Undecided { partial, .. } => partial,
        }
    }
}

const MAX_BRANCH_DEPTH: usize = 64;

struct Branch {
    equations: Vec<Poly>,
    values: BTreeMap<String, Poly>,
}

enum Step {
    Done(Vec<Solution>),
    Stuck(Vec<Solution>, Vec<Poly>),
}

fn substitute_all(b: &mut Branch, name: &str, value: &Poly) {
    for e in b.equations.iter_mut() {
        if e.degree_in(name) > 0 {
            *e = e.substitute(name, value);
        }
    }
    for v in b.values.values_mut() {
        if v.degree_in(name) > 0 {
            *v = v.substitute(name, value);
        }
    }
    b.values.insert(name.into(), value.clone());
}

/// Solves every equation of total degree at most one at once. Returns
/// false if they are inconsistent.
fn linear_pass(b: &mut Branch, order: &[String], vars: &Arc<[String]>) -> Option<bool> {
    let linear: Vec<&Poly> = b.equations.iter().filter(|e| e.total_degree() <= 1).collect();
    if linear.is_empty() {
        return None;
    }
    // Later parameters come first, so they are the ones eliminated and the
    // answer is phrased in the earlier ones.
    let cols: Vec<&String> = order
        .iter()
        .rev()
        .filter(|p| linear.iter().any(|e| e.degree_in(p) > 0))
        .collect();
    let nv = cols.len();
    let mut e = Echelon::new(nv + 1);
    for eq in &linear {
        let mut row = Vector::zero(nv + 1);
        for (m, c) in eq.terms() {
            let col = match m.0.iter().position(|&x| x > 0) {
                Some(vi) => cols
                    .iter()
                    .position(|p| **p == eq.vars()[vi])
                    .expect("occurring variable"),
                None => nv,
            };
            row.set(col, c.clone());
        }
        if e.insert(&row).expect("dimension") == Some(nv) {
            return Some(false);
        }
    }
    let mut assigned = Vec::new();
    for p in e.pivots().collect::<Vec<_>>() {
        let row = e.row(p).unwrap();
        let mut value = Poly::constant_in(vars, Scalar::zero());
        for (col, c) in row.iter() {
            if col == p {
                continue;
            }
            let term = if col == nv {
                Poly::constant_in(vars, -c)
            } else {
                Poly::variable(vars, cols[col]).expect("declared parameter").scale(&-c)
            };
            value.add_assign(&term);
        }
        assigned.push((cols[p].clone(), value));
    }
    for (name, value) in &assigned {
        substitute_all(b, name, value);
    }
    b.equations = normalize_all(core::mem::take(&mut b.equations));
    Some(true)
}

/// Writes `p = q(ℓ)` for a linear form `ℓ` in at least two parameters and
/// a univariate `q`, if possible. `ℓ` is the degree-one part of `p`,
/// scaled to a monic leading term.
fn in_linear_form(p: &Poly) -> Option<(Poly, Vec<Scalar>)> {
    let d = p.total_degree();
    if d < 2 {
        return None;
    }
    let mut form = Poly::constant_in(p.vars(), Scalar::zero());
    for (m, c) in p.terms().filter(|(m, _)| m.degree() == 1) {
        let mut t = Poly::constant_in(p.vars(), c.clone());
        let i = m.0.iter().position(|&e| e == 1).expect("degree one");
        t = t.mul(&Poly::variable(p.vars(), &p.vars()[i]).expect("own variable"));
        form.add_assign(&t);
    }
    if form.occurring().len() < 2 {
        return None;
    }
    let lead = form.leading().expect("nonzero").1.clone();
    let form = form.scale(&lead.inv().expect("nonzero"));
    let mut coeffs = alloc::vec![Scalar::zero(); d as usize + 1];
    let mut rem = p.clone();
    for k in (1..=d).rev() {
        let Some((rm, rc)) = rem.leading() else { break };
        if rm.degree() > k {
            return None;
        }
        if rm.degree() < k {
            continue;
        }
        let power = form.pow(k);
        let (pm, pc) = power.leading().expect("nonzero");
        if pm != rm {
            return None;
        }
        let c = rc.div(pc).expect("nonzero");
        rem = rem.sub(&power.scale(&c));
        coeffs[k as usize] = c;
    }
    coeffs[0] = rem.as_constant()?;
    Some((form, coeffs))
}

fn run(mut b: Branch, order: &[String], vars: &Arc<[String]>, depth: usize) -> Step {
    loop {
        b.equations = normalize_all(core::mem::take(&mut b.equations));
        if b.equations.iter().any(|e| e.is_constant()) {
            return Step::Done(Vec::new());
        }
        if b.equations.is_empty() {
            let free = order.iter().filter(|p| !b.values.contains_key(*p)).cloned().collect();
            return Step::Done(alloc::vec![Solution { values: b.values, free }]);
        }
        match linear_pass(&mut b, order, vars) {
            Some(false) => return Step::Done(Vec::new()),
            Some(true) => continue,
            None => {}
        }
        let uni = b.equations.iter().find_map(|e| {
            let occ = e.occurring();
            (occ.len() == 1).then(|| {
                let x = Poly::variable(vars, &occ[0]).expect("declared parameter");
                (x, e.univariate_coeffs(&occ[0]).expect("one variable"))
            })
        });
        let Some((form, coeffs)) = uni.or_else(|| b.equations.iter().find_map(in_linear_form)) else {
            return Step::Stuck(Vec::new(), b.equations);
        };
        if depth >= MAX_BRANCH_DEPTH {
            return Step::Stuck(Vec::new(), b.equations);
        }
        let (roots, rest) = roots_in_field(&UniPoly::new(coeffs.clone()));
        let mut solved = Vec::new();
        let mut stuck: Option<Vec<Poly>> = None;
        for r in roots {
            let mut equations = b.equations.clone();
            equations.push(form.sub(&Poly::constant_in(vars, r)));
            let child = Branch {
                equations,
                values: b.values.clone(),
            };
            match run(child, order, vars, depth + 1) {
                Step::Done(s) => solved.extend(s),
                Step::Stuck(s, res) => {
                    solved.extend(s);
                    stuck.get_or_insert(res);
                }
            }
        }
        if rest.degree().unwrap_or(0) > 0 && stuck.is_none() {
            // roots outside ℚ(i)
            let mut factor = Poly::constant_in(vars, Scalar::zero());
            for c in rest.0.iter().rev() {
                factor = factor.mul(&form).add(&Poly::constant_in(vars, c.clone()));
            }
            let mut res = alloc::vec![factor];
            res.extend(b.equations.iter().cloned());
            stuck = Some(normalize_all(res));
        }
        return match stuck {
            None => Step::Done(solved),
            Some(res) => Step::Stuck(solved, res),
        };
    }
}

/// Linear elimination, univariate root splitting over ℚ(i) and
/// substitution, repeated until the equations are gone or none of the
/// moves applies.
pub fn solve_constraints(c: &ConstraintSet) -> SolveOutcome {
    let order = c.parameters.clone();
    let names: Vec<&str> = order.iter().map(String::as_str).collect();
    let vars = Poly::ring(&names);
    let mut equations = Vec::with_capacity(c.equations.len());
    for e in &c.equations {
        match e.with_vars(&vars) {
            Ok(e) => equations.push(e),
            Err(_) => {
                return SolveOutcome::Undecided {
                    partial: Vec::new(),
                    residual: c.equations.clone(),
                }
            }
        }
    }
    let branch = Branch {
        equations,
        values: BTreeMap::new(),
    };
    let mut out = match run(branch, &order, &vars, 0) {
        Step::Done(s) => SolveOutcome::Solved(s),
        Step::Stuck(partial, residual) => SolveOutcome::Undecided { partial, residual },
    };
    let (SolveOutcome::Solved(s) | SolveOutcome::Undecided { partial: s, .. }) = &mut out;
    for sol in s.iter_mut() {
        for v in sol.values.values_mut() {
            *v = v.compact();
        }
    }
    s.sort_by_key(|sol| sol.describe(&order));
    s.dedup();
    out
}
