//! Acceptance battery. Each criterion prints one PASS/FAIL line; the test
//! fails at the end if any criterion failed.
//!
//! Arithmetic is exact throughout, so every comparison is equality. The
//! only tolerances are the wall-clock limits below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde_json::Value;
use superhom::run;
use superhom_core::automorphisms::relation_suite;
use superhom_core::automorphisms::{generator, EndoFamily, Generator};
use superhom_core::cartan_families::check_transitivity;
use superhom_core::homsolver::{cartan_diagonal_family, families_for};
use superhom_core::homsolver::{
    family_constraints, hom_jacobi_space, named_triples, reproduce_main_theorem, solve_constraints, triple_constraints,
    ConstraintSet, FamilyOutcome, ReportOptions, SolveOutcome, Verdict,
};
use superhom_core::{AlgebraSpec, BuiltAlgebra, Parity, Poly, Scalar, SuperAlgebra};

/// Axiom suite wall-clock limit.
const AXIOM_LIMIT: Duration = Duration::from_secs(60);
/// Report battery wall-clock limit.
const BATTERY_LIMIT: Duration = Duration::from_secs(300);
/// Random instances per relation.
const RELATION_INSTANCES: usize = 5;
const SEED: u64 = 2024;

const ALGEBRAS: [&str; 11] = [
    "gl:2|1", "sl:2|1", "sl:3|1", "psl:2|2", "P:2", "Q:2", "osp:3|2", "W:3", "S:3", "St:4", "H:4",
];

fn build(s: &str) -> BuiltAlgebra {
    s.parse::<AlgebraSpec>().unwrap().build().unwrap()
}

struct Ledger {
    failures: Vec<usize>,
}

impl Ledger {
    fn record(&mut self, n: usize, title: &str, result: Result<String, String>) {
        match result {
            Ok(detail) => println!("criterion {n}: PASS  {title}: {detail}"),
            Err(detail) => {
                println!("criterion {n}: FAIL  {title}: {detail}");
                self.failures.push(n);
            }
        }
    }
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn axiom_suite() -> Result<String, String> {
    let start = Instant::now();
    let mut triples = 0;
    for s in ALGEBRAS {
        let b = build(s);
        let r = b.algebra().verify_axioms();
        check(r.passed(), || format!("{s}: {:?}", r.violation))?;
        triples += r.triples_checked;
    }
    let t = start.elapsed();
    check(t < AXIOM_LIMIT, || format!("took {t:?}, limit {AXIOM_LIMIT:?}"))?;
    Ok(format!(
        "{} algebras, {triples} triples, zero residual, {:.1?}",
        ALGEBRAS.len(),
        t
    ))
}

fn graded_dims(g: &SuperAlgebra) -> Vec<usize> {
    let degrees = g.space().degrees().unwrap();
    let lo = *degrees.iter().min().unwrap();
    let hi = *degrees.iter().max().unwrap();
    (lo..=hi).map(|d| degrees.iter().filter(|&&x| x == d).count()).collect()
}

fn dimension_table() -> Result<String, String> {
    let expected = [
        ("gl:2|1", 9),
        ("sl:2|1", 8),
        ("psl:2|2", 14),
        ("P:2", 17),
        ("Q:2", 16),
        ("osp:3|2", 12),
        ("W:3", 24),
        ("S:3", 17),
        ("St:4", 49),
        ("H:4", 14),
    ];
    for (s, d) in expected {
        let got = build(s).algebra().dim();
        check(got == d, || format!("{s}: dimension {got}, expected {d}"))?;
    }
    let w = build("W:3");
    let wd = graded_dims(w.algebra());
    check(wd == [3, 9, 9, 3], || format!("W(3) graded dims {wd:?}"))?;
    let st = build("St:4");
    let minus = st.algebra().space().degree_indices(-1).len();
    check(minus == 4, || format!("S~(4)_-1 has dim {minus}"))?;
    let h = build("H:4");
    let h0 = h.algebra().space().degree_indices(0).len();
    check(h0 == 6, || format!("H(4)_0 has dim {h0}, so(4) has 6"))?;
    Ok(format!(
        "{} dimensions, W(3) = (3,9,9,3), S~(4)_-1 = 4, H(4)_0 = 6",
        expected.len()
    ))
}

fn relation_battery() -> Result<String, String> {
    let mut names = std::collections::BTreeSet::new();
    let mut checks = 0;
    for s in ["gl:2|1", "gl:2|2", "Qt:2"] {
        let BuiltAlgebra::Matrix(alg) = build(s) else {
            unreachable!()
        };
        for r in relation_suite(&alg, SEED, RELATION_INSTANCES).map_err(|e| e.to_string())? {
            check(r.holds() && r.instances >= RELATION_INSTANCES, || {
                format!("{s} {}: {}/{} ({:?})", r.name, r.passed, r.instances, r.first_failure)
            })?;
            names.insert(r.name);
            checks += r.instances;
        }
    }
    check(names.len() == 17, || {
        format!("only {} relations covered: {names:?}", names.len())
    })?;
    Ok(format!(
        "{} relations, {checks} random instances, all exact",
        names.len()
    ))
}

fn equations(c: &ConstraintSet) -> Vec<String> {
    c.equations.iter().map(ToString::to_string).collect()
}

fn family(b: &BuiltAlgebra, label: &str) -> EndoFamily {
    families_for(b)
        .unwrap()
        .into_iter()
        .find(|f| f.label() == label)
        .unwrap()
}

fn triple_sets(b: &BuiltAlgebra, fam: &EndoFamily) -> Vec<Vec<String>> {
    named_triples(b)
        .unwrap()
        .into_iter()
        .filter(|t| t.family == fam.label())
        .map(|t| equations(&triple_constraints(b.algebra(), fam, [&t.args[0], &t.args[1], &t.args[2]]).unwrap()))
        .collect()
}

fn named_triple_constraints() -> Result<String, String> {
    let sl = build("sl:2|1");
    let j = family(&sl, "j(lambda)");
    let got = triple_sets(&sl, &j);
    check(got == [["lambda - 1"]], || format!("sl(2|1): {got:?}"))?;

    let psl = build("psl:2|2");
    let rho = family(&psl, "rho(a,b,c,d)");
    let got = triple_sets(&psl, &rho);
    check(got.len() == 2 && got[0] == ["a - 1", "c"], || {
        format!("psl(2|2) first triple: {got:?}")
    })?;
    let union: Vec<&String> = got.iter().flatten().collect();
    for e in ["a - 1", "c", "d - 1"] {
        check(union.iter().any(|u| *u == e), || {
            format!("psl(2|2) triples miss {e}: {got:?}")
        })?;
    }

    let p = build("P:2");
    let j = family(&p, "j(lambda)");
    let got = triple_sets(&p, &j);
    check(got == [["lambda - 1"]], || format!("P(2): {got:?}"))?;

    let q = build("Q:2");
    let s2 = family(&q, "sigma_q^2");
    let got = triple_sets(&q, &s2);
    check(got == [["1"]], || format!("Q(2) sigma_q^2 triple: {got:?}"))?;
    let BuiltAlgebra::Matrix(qm) = &q else { unreachable!() };
    let direct = generator(&Generator::SigmaQ, qm).unwrap().power(2);
    let c = family_constraints(q.algebra(), &direct).unwrap();
    check(solve_constraints(&c) == SolveOutcome::Solved(Vec::new()), || {
        "sigma_q^2 admits solutions".into()
    })?;

    let w = build("W:3");
    let BuiltAlgebra::Cartan(wc) = &w else { unreachable!() };
    let diag = cartan_diagonal_family(wc).unwrap();
    let mut eqs = Vec::new();
    for t in named_triples(&w).unwrap() {
        eqs.extend(
            triple_constraints(w.algebra(), &diag, [&t.args[0], &t.args[1], &t.args[2]])
                .unwrap()
                .equations,
        );
    }
    let c = ConstraintSet::new(diag.params().to_vec(), eqs, Vec::new());
    let SolveOutcome::Solved(sols) = solve_constraints(&c) else {
        return Err("W(3) triple system undecided".into());
    };
    let value = |sol: &superhom_core::homsolver::Solution, p: &str| {
        sol.values
            .get(p)
            .cloned()
            .unwrap_or_else(|| Poly::variable(&Poly::ring(&[p]), p).unwrap())
    };
    check(sols.len() == 1, || format!("W(3) triples: {} solutions", sols.len()))?;
    let (a1, a2, a3) = (value(&sols[0], "a1"), value(&sols[0], "a2"), value(&sols[0], "a3"));
    check(a1 == a2 && a2 == a3, || {
        format!("W(3) triples give a = ({a1}, {a2}, {a3})")
    })?;
    let full = solve_constraints(&family_constraints(w.algebra(), &diag).unwrap());
    let SolveOutcome::Solved(full) = full else {
        return Err("W(3) diagonal family undecided".into());
    };
    let ones = full.len() == 1
        && ["a1", "a2", "a3"]
            .iter()
            .all(|p| full[0].values[*p] == Poly::constant(Scalar::one()));
    check(ones, || "W(3) diagonal family does not force a_i = 1".into())?;
    Ok("sl(2|1) {lambda-1}; psl(2|2) {a-1,c} + {b,d-1} covers {a-1,c,d-1}; P(2) {lambda-1}; Q(2) sigma_q^2 -> {1}; W(3) a1=a2=a3 -> 1".into())
}

/// Independent hom-space dimension: one unknown per even entry σ_{a,x},
/// rows from the twisted Jacobi sum on every ordered basis triple, and a
/// sparse elimination written here. Stops early once the rank
/// leaves only the identity direction, which always solves the system
/// when the axioms hold.
fn oracle_hom_dim(g: &SuperAlgebra) -> usize {
    let n = g.dim();
    let mut index = BTreeMap::new();
    for a in 0..n {
        for x in 0..n {
            if g.parity(a) == g.parity(x) {
                let next = index.len();
                index.insert((a, x), next);
            }
        }
    }
    let unknowns = index.len();
    let par = |i: usize| g.parity(i) == Parity::Odd;
    let mut pivots: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut rows: BTreeMap<usize, BTreeMap<usize, Scalar>> = BTreeMap::new();
                // (-1)^{|x||z|} [σx, [y, z]] and its cyclic shifts.
                for (x, y, z, odd) in [
                    (i, j, k, par(i) && par(k)),
                    (j, k, i, par(j) && par(i)),
                    (k, i, j, par(k) && par(j)),
                ] {
                    let sign = if odd { -Scalar::one() } else { Scalar::one() };
                    let w = g.bracket_basis(y, z);
                    for a in (0..n).filter(|&a| g.parity(a) == g.parity(x)) {
                        let u = index[&(a, x)];
                        for (m, wm) in w.iter() {
                            for (r, c) in g.bracket_basis(a, m).iter() {
                                let e = rows.entry(r).or_default().entry(u).or_insert_with(Scalar::zero);
                                *e = &*e + &(&sign * &(wm * c));
                            }
                        }
                    }
                }
                for (_, mut row) in rows {
                    row.retain(|_, c| !c.is_zero());
                    while let Some((&lead, _)) = row.iter().next() {
                        let Some(p) = pivots.get(&lead) else { break };
                        let f = row[&lead].clone();
                        for (col, v) in p {
                            let e = row.entry(*col).or_insert_with(Scalar::zero);
                            *e = &*e - &(&f * v);
                        }
                        row.retain(|_, c| !c.is_zero());
                    }
                    if let Some((&lead, c)) = row.iter().next() {
                        let inv = c.inv().unwrap();
                        let row = row.into_iter().map(|(col, v)| (col, &v * &inv)).collect();
                        pivots.insert(lead, row);
                        if pivots.len() + 1 == unknowns {
                            return 1;
                        }
                    }
                }
            }
        }
    }
    unknowns - pivots.len()
}

fn completeness() -> Result<String, String> {
    // Frozen after the oracle and the solver agreed on every algebra.
    let golden: [(&str, usize); 11] = [
        ("gl:2|1", 6),
        ("sl:2|1", 1),
        ("sl:3|1", 1),
        ("psl:2|2", 1),
        ("P:2", 1),
        ("Q:2", 1),
        ("osp:3|2", 1),
        ("W:3", 1),
        ("S:3", 1),
        ("St:4", 1),
        ("H:4", 1),
    ];
    let mut parts = Vec::new();
    for (s, expected) in golden {
        let b = build(s);
        let g = b.algebra();
        let basis = hom_jacobi_space(g);
        let oracle = oracle_hom_dim(g);
        check(basis.len() == oracle && oracle == expected, || {
            format!("{s}: solver {}, oracle {oracle}, golden {expected}", basis.len())
        })?;
        if expected == 1 {
            check(basis[0].scalar_multiple_of_identity().is_some(), || {
                format!("{s}: basis is not the identity")
            })?;
        } else {
            let r =
                reproduce_main_theorem(&s.parse().unwrap(), &ReportOptions::default()).map_err(|e| e.to_string())?;
            let logged = r
                .findings
                .iter()
                .any(|f| f.contains(&format!("{expected}-dimensional")));
            let fallback = r.families.iter().any(|f| f.name == "hom-space");
            check(logged && fallback && r.evidence != "linear-space", || {
                format!("{s}: no fallback or finding")
            })?;
            parts.push(format!("{s} = {expected} via fallback ({})", r.verdict));
        }
    }
    Ok(format!(
        "solver and oracle agree on all {}; others = 1 (identity); {}",
        golden.len(),
        parts.join(", ")
    ))
}

fn rho_enumeration() -> Result<String, String> {
    let psl = build("psl:2|2");
    let rho = family(&psl, "rho(a,b,c,d)");
    let c = family_constraints(psl.algebra(), &rho).map_err(|e| e.to_string())?;
    let SolveOutcome::Solved(sols) = solve_constraints(&c) else {
        return Err("undecided".into());
    };
    let got: Vec<String> = sols.iter().map(|s| s.describe(&c.parameters)).collect();
    check(got == ["a = 1, b = 0, c = 0, d = 1"], || format!("{got:?}"))?;
    Ok(format!("{} constraints solve to a=1, b=0, c=0, d=1", c.len()))
}

fn transitivity() -> Result<String, String> {
    let mut parts = Vec::new();
    for s in ["W:3", "S:3", "H:4"] {
        let b = build(s);
        let t = check_transitivity(b.algebra()).map_err(|e| e.to_string())?;
        check(t.holds && t.kernel_dim == t.minus_one_dim, || format!("{s}: {t:?}"))?;
        parts.push(format!("{s} kernel = g_-1 (dim {})", t.kernel_dim));
    }
    Ok(parts.join(", "))
}

fn battery() -> (Vec<(String, i32, String)>, Duration) {
    let start = Instant::now();
    let seed = SEED.to_string();
    let out = ALGEBRAS
        .iter()
        .map(|s| {
            let mut out = Vec::new();
            let mut err = Vec::new();
            let code = run(["superhom", "report", s, "--seed", &seed], &mut out, &mut err);
            (s.to_string(), code, String::from_utf8(out).unwrap())
        })
        .collect();
    (out, start.elapsed())
}

fn verdicts(runs: &[(String, i32, String)], elapsed: Duration) -> Result<String, String> {
    check(elapsed < BATTERY_LIMIT, || {
        format!("took {elapsed:?}, limit {BATTERY_LIMIT:?}")
    })?;
    let mut trivial = 0;
    for (s, code, json) in runs {
        let v: Value = serde_json::from_str(json).map_err(|e| format!("{s}: {e}"))?;
        if s == "gl:2|1" {
            continue;
        }
        check(*code == 0 && v["verdict"] == "TRIVIAL", || {
            format!("{s}: exit {code}, verdict {}", v["verdict"])
        })?;
        trivial += 1;
    }
    Ok(format!(
        "{trivial} simple algebras TRIVIAL with exit 0, battery {elapsed:.1?}"
    ))
}

fn determinism(a: &[(String, i32, String)], b: &[(String, i32, String)]) -> Result<String, String> {
    for (x, y) in a.iter().zip(b) {
        check(x == y, || format!("{} differs between runs", x.0))?;
    }
    let bytes: usize = a.iter().map(|r| r.2.len()).sum();
    Ok(format!("{} reports, {bytes} bytes, byte-identical", a.len()))
}

#[test]
fn acceptance() {
    let mut ledger = Ledger { failures: Vec::new() };
    ledger.record(1, "axiom suite", axiom_suite());
    ledger.record(2, "dimension table", dimension_table());
    ledger.record(3, "relation suite", relation_battery());
    ledger.record(4, "named-triple constraints", named_triple_constraints());
    ledger.record(5, "hom-space completeness", completeness());
    ledger.record(6, "full rho enumeration", rho_enumeration());
    ledger.record(7, "transitivity", transitivity());
    let (first, elapsed) = battery();
    ledger.record(8, "main-theorem verdicts", verdicts(&first, elapsed));
    let (second, _) = battery();
    ledger.record(9, "determinism", determinism(&first, &second));

    // The non-simple gl(2|1) is not covered by criterion 8; it is the one
    // algebra with a genuine twist.
    let gl = reproduce_main_theorem(&"gl:2|1".parse().unwrap(), &ReportOptions::default()).unwrap();
    assert_eq!(gl.verdict, Verdict::Nontrivial);
    assert!(gl
        .families
        .iter()
        .any(|f| matches!(f.outcome, FamilyOutcome::Nontrivial(_))));

    assert!(ledger.failures.is_empty(), "failed criteria: {:?}", ledger.failures);
}
