//! JSON and text forms of reports.

use serde_json::{json, Value};
use superhom_core::automorphisms::{RelationReport, RhoFinding};
use superhom_core::cartan_families::TransitivityReport;
use superhom_core::homsolver::{FamilyResult, HomReport, SolveOutcome, TripleResult};
use superhom_core::superalgebra::{AxiomReport, AxiomViolation, GradingReport};
use superhom_core::{LinearMap, SuperAlgebra};

fn strings<T: ToString>(items: &[T]) -> Vec<String> {
    items.iter().map(ToString::to_string).collect()
}

fn solution_json(parameters: &[String], outcome: &SolveOutcome) -> (Vec<String>, &'static str, Vec<String>) {
    let sols = outcome.solutions().iter().map(|s| s.describe(parameters)).collect();
    match outcome {
        SolveOutcome::Solved(_) => (sols, "solved", Vec::new()),
        SolveOutcome::Undecided { residual, .. } => (sols, "undecided", strings(residual)),
    }
}

pub fn family_json(f: &FamilyResult) -> Value {
    let (solutions, status, residual) = solution_json(&f.constraints.parameters, &f.solution);
    let mut v = json!({
        "constraints": strings(&f.constraints.equations),
        "name": f.name,
        "outcome": f.outcome.to_string(),
        "parameters": f.constraints.parameters,
        "solutions": solutions,
        "status": status,
    });
    if !residual.is_empty() {
        v["residual"] = json!(residual);
    }
    v
}

pub fn triple_json(t: &TripleResult) -> Value {
    let (solutions, status, residual) = solution_json(&t.constraints.parameters, &t.solution);
    let mut v = json!({
        "constraints": strings(&t.constraints.equations),
        "family": t.family,
        "name": t.name,
        "solutions": solutions,
        "status": status,
    });
    if !residual.is_empty() {
        v["residual"] = json!(residual);
    }
    v
}

pub fn report_json(r: &HomReport) -> Value {
    json!({
        "algebra": r.algebra,
        "axioms_hold": r.axioms_hold,
        "dim": r.dim,
        "evidence": r.evidence,
        "families": r.families.iter().map(family_json).collect::<Vec<_>>(),
        "findings": r.findings,
        "hom_space_dim": r.hom_space_dim,
        "hom_space_scalar": r.hom_space_scalar,
        "seed": r.seed,
        "simple": r.simple,
        "spec": r.spec,
        "tool_version": r.tool_version,
        "triples": r.triples.iter().map(triple_json).collect::<Vec<_>>(),
        "verdict": r.verdict.to_string(),
    })
}

pub fn report_text(r: &HomReport) -> String {
    let mut out = String::new();
    let spec = r.spec.as_deref().map(|s| format!(" ({s})")).unwrap_or_default();
    out += &format!("algebra     {}{spec}\n", r.algebra);
    out += &format!("dim         {}\n", r.dim);
    out += &format!("axioms      {}\n", if r.axioms_hold { "hold" } else { "FAIL" });
    match r.hom_space_dim {
        Some(d) => {
            let kind = if r.hom_space_scalar { " (identity)" } else { "" };
            out += &format!("hom-space   {d}{kind}\n");
        }
        None => out += "hom-space   skipped\n",
    }
    for f in &r.families {
        let sols = f.solution_strings();
        let sols = if sols.is_empty() {
            "none".to_string()
        } else {
            sols.join("; ")
        };
        out += &format!(
            "family      {}: {} constraints, solutions: {sols} => {}\n",
            f.name,
            f.constraints.len(),
            f.outcome
        );
    }
    for t in &r.triples {
        out += &format!(
            "triple      {} [{}]: {{{}}}\n",
            t.name,
            t.family,
            strings(&t.constraints.equations).join(", ")
        );
    }
    for finding in &r.findings {
        out += &format!("finding     {finding}\n");
    }
    out += &format!("verdict     {} (evidence: {})\n", r.verdict, r.evidence);
    out
}

fn violation_string(g: &SuperAlgebra, v: &AxiomViolation) -> String {
    match v {
        AxiomViolation::Homogeneity { i, j } => {
            format!(
                "[{}, {}] is not homogeneous of the expected parity",
                g.label(*i),
                g.label(*j)
            )
        }
        AxiomViolation::Jacobi { i, j, k, residual } => format!(
            "Jacobi sum on ({}, {}, {}) is {}",
            g.label(*i),
            g.label(*j),
            g.label(*k),
            residual.describe(g.space().labels())
        ),
    }
}

pub fn axioms_json(g: &SuperAlgebra, a: &AxiomReport) -> Value {
    json!({
        "passed": a.passed(),
        "triples_checked": a.triples_checked,
        "violation": a.violation.as_ref().map(|v| violation_string(g, v)),
    })
}

pub fn grading_json(r: &GradingReport) -> Value {
    json!({
        "bracket_failures": r.bracket_failures,
        "graded_dims": r.support.iter().map(|(d, n)| json!({"degree": d, "dim": n})).collect::<Vec<_>>(),
        "parity_mismatches": r.parity_mismatches,
        "passed": r.passed(),
    })
}

pub fn transitivity_json(t: &TransitivityReport) -> Value {
    json!({
        "holds": t.holds,
        "kernel_dim": t.kernel_dim,
        "minus_one_dim": t.minus_one_dim,
    })
}

/// Nonzero entries of a map as `{row, col, coeff}` with 0-based indices.
pub fn map_json(m: &LinearMap) -> Value {
    Value::Array(
        m.triples()
            .map(|(r, c, v)| json!({"coeff": v.to_string(), "col": c, "row": r}))
            .collect(),
    )
}

pub fn relation_json(r: &RelationReport) -> Value {
    json!({
        "first_failure": r.first_failure,
        "instances": r.instances,
        "name": r.name,
        "passed": r.passed,
        "statement": r.statement,
    })
}

pub fn rho_json(r: &RhoFinding) -> Value {
    json!({
        "algebra": r.algebra,
        "counterexample": r.counterexample,
        "homomorphisms": r.homomorphisms,
        "instances": r.instances,
    })
}

/// Compact rendering of a JSON value for text output: `key: value` lines.
pub fn text_lines(v: &Value) -> String {
    fn walk(v: &Value, prefix: &str, out: &mut String) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(x, &p, out);
                }
            }
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                let items: Vec<String> = a.iter().map(scalar_text).collect();
                *out += &format!("{prefix}: [{}]\n", items.join(", "));
            }
            Value::Array(a) => {
                for (n, x) in a.iter().enumerate() {
                    walk(x, &format!("{prefix}[{n}]"), out);
                }
            }
            other => *out += &format!("{prefix}: {}\n", scalar_text(other)),
        }
    }
    fn scalar_text(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        }
    }
    let mut out = String::new();
    walk(v, "", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lines_flatten_nested_values() {
        let v = json!({"a": 1, "b": {"c": "x", "d": [1, 2]}, "e": [{"f": null}]});
        assert_eq!(text_lines(&v), "a: 1\nb.c: x\nb.d: [1, 2]\ne[0].f: null\n");
    }
}
