//! The structure-constant file format.
//!
//! A document lists the basis (parity, optional Z-degree, labels) and the
//! nonzero brackets `[b_i, b_j]` for `i ≤ j`. Indices are 0-based in the
//! file. Output is canonical: keys sorted, brackets sorted by `(i, j)`,
//! terms by `k`, scalars in the `GaussianRational` display form.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use superhom_core::superalgebra::{AxiomReport, GradingReport, StructureConstants};
use superhom_core::superlinear::{Parity, SuperSpace};
use superhom_core::{Scalar, SuperAlgebra, Vector};

pub const FORMAT_VERSION: u32 = 1;

// Fields are declared in alphabetical order so serialization emits
// sorted keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScDocument {
    pub brackets: Vec<BracketRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<Vec<i32>>,
    pub dim: usize,
    pub format_version: u32,
    pub labels: Vec<String>,
    pub name: String,
    pub parity: Vec<u8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketRecord {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    pub coeff: String,
    pub k: usize,
}

#[derive(Debug, thiserror::Error)]
pub enum FileError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: parse error at line {line}, column {column}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{path}: {field}: {message}")]
    Schema {
        path: PathBuf,
        field: String,
        message: String,
    },
}

/// A document that failed a structural check, before a path is attached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemaError {
    pub field: String,
    pub message: String,
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        field: field.into(),
        message: message.into(),
    }
}

impl ScDocument {
    pub fn from_algebra(g: &SuperAlgebra) -> Self {
        let space = g.space();
        let brackets = g
            .structure_constants()
            .table()
            .iter()
            .map(|(&(i, j), v)| BracketRecord {
                i,
                j,
                terms: v
                    .iter()
                    .map(|(k, c)| Term {
                        coeff: c.to_string(),
                        k,
                    })
                    .collect(),
            })
            .collect();
        ScDocument {
            brackets,
            degree: space.degrees().map(<[i32]>::to_vec),
            dim: g.dim(),
            format_version: FORMAT_VERSION,
            labels: space.labels().to_vec(),
            name: g.name().to_string(),
            parity: space.parities().iter().map(|p| p.bit()).collect(),
        }
    }

    /// Canonical pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    /// Checks the schema and builds the algebra. Axioms are not checked
    /// here.
    pub fn to_algebra(&self) -> Result<SuperAlgebra, SchemaError> {
        if self.format_version != FORMAT_VERSION {
            return Err(schema(
                "format_version",
                format!(
                    "unsupported version {} (expected {FORMAT_VERSION})",
                    self.format_version
                ),
            ));
        }
        let dim = self.dim;
        if self.parity.len() != dim {
            return Err(schema(
                "parity",
                format!("{} entries for dimension {dim}", self.parity.len()),
            ));
        }
        if self.labels.len() != dim {
            return Err(schema(
                "labels",
                format!("{} entries for dimension {dim}", self.labels.len()),
            ));
        }
        let parity = self
            .parity
            .iter()
            .enumerate()
            .map(|(n, &b)| match b {
                0 | 1 => Ok(Parity::from_bit(b)),
                _ => Err(schema(format!("parity[{n}]"), format!("expected 0 or 1, found {b}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(d) = &self.degree {
            if d.len() != dim {
                return Err(schema("degree", format!("{} entries for dimension {dim}", d.len())));
            }
        }
        let space = SuperSpace::new(parity, self.degree.clone(), self.labels.clone())
            .map_err(|e| schema("labels", e.to_string()))?;

        let mut table = BTreeMap::new();
        for (n, rec) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{n}]");
            if rec.i > rec.j {
                return Err(schema(field, format!("record ({}, {}) has i > j", rec.i, rec.j)));
            }
            if rec.j >= dim {
                return Err(schema(
                    field,
                    format!("index {} out of range for dimension {dim}", rec.j),
                ));
            }
            let mut v = Vector::zero(dim);
            for (m, t) in rec.terms.iter().enumerate() {
                let tf = format!("{field}.terms[{m}]");
                if t.k >= dim {
                    return Err(schema(tf, format!("index {} out of range for dimension {dim}", t.k)));
                }
                if v.get(t.k).is_some() {
                    return Err(schema(tf, format!("repeated index {}", t.k)));
                }
                let c: Scalar = t
                    .coeff
                    .parse()
                    .map_err(|e: superhom_core::Error| schema(&tf, e.to_string()))?;
                v.set(t.k, c);
            }
            if table.insert((rec.i, rec.j), v).is_some() {
                return Err(schema(field, format!("repeated record ({}, {})", rec.i, rec.j)));
            }
        }
        let sc = StructureConstants::new(space, table).map_err(|e| schema("brackets", e.to_string()))?;
        Ok(SuperAlgebra::new(self.name.clone(), sc))
    }
}

/// An algebra read from disk with its axiom check. Failing tables load
/// anyway so they can be analysed.
#[derive(Clone, Debug)]
pub struct Loaded {
    pub algebra: SuperAlgebra,
    pub axioms: AxiomReport,
    /// Present when the document carries degrees.
    pub grading: Option<GradingReport>,
}

impl Loaded {
    pub fn flagged(&self) -> bool {
        !self.axioms.passed() || self.grading.as_ref().is_some_and(|g| !g.passed())
    }
}

pub fn parse_sc(text: &str, path: &Path) -> Result<Loaded, FileError> {
    let doc: ScDocument = serde_json::from_str(text).map_err(|e| FileError::Parse {
        path: path.to_path_buf(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    let algebra = doc.to_algebra().map_err(|e| FileError::Schema {
        path: path.to_path_buf(),
        field: e.field,
        message: e.message,
    })?;
    let axioms = algebra.verify_axioms();
    let grading = algebra.verify_grading().ok();
    let graded = grading.as_ref().is_some_and(GradingReport::passed);
    Ok(Loaded {
        algebra: algebra.with_z_grading(graded),
        axioms,
        grading,
    })
}

pub fn load_sc(path: &Path) -> Result<Loaded, FileError> {
    let text = fs::read_to_string(path).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_sc(&text, path)
}

pub fn save_sc(g: &SuperAlgebra, path: &Path) -> Result<(), FileError> {
    fs::write(path, ScDocument::from_algebra(g).to_json()).map_err(|source| FileError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use superhom_core::AlgebraSpec;

    fn gl11() -> SuperAlgebra {
        let spec: AlgebraSpec = "gl:1|1".parse().unwrap();
        spec.build().unwrap().algebra().clone()
    }

    #[test]
    fn gl11_has_five_bracket_records() {
        let doc = ScDocument::from_algebra(&gl11());
        assert_eq!(doc.dim, 4);
        assert_eq!(doc.brackets.len(), 5);
        assert!(doc.brackets.iter().all(|r| r.i <= r.j && !r.terms.is_empty()));
    }

    #[test]
    fn abelian_document_is_empty() {
        let g = SuperAlgebra::abelian("ab", SuperSpace::anonymous(vec![Parity::Even, Parity::Odd]));
        let doc = ScDocument::from_algebra(&g);
        assert!(doc.brackets.is_empty());
        assert_eq!(doc.to_algebra().unwrap().dim(), 2);
    }

    #[test]
    fn keys_are_sorted() {
        let json = ScDocument::from_algebra(&gl11()).to_json();
        let top: Vec<usize> = [
            "\"brackets\"",
            "\"dim\"",
            "\"format_version\"",
            "\"labels\"",
            "\"name\"",
            "\"parity\"",
        ]
        .iter()
        .map(|k| json.find(k).unwrap())
        .collect();
        assert!(top.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn document_round_trip() {
        let doc = ScDocument::from_algebra(&gl11());
        let back = ScDocument::from_algebra(&doc.to_algebra().unwrap());
        assert_eq!(doc, back);
    }

    #[test]
    fn reversed_record_is_rejected() {
        let mut doc = ScDocument::from_algebra(&gl11());
        let r = &mut doc.brackets[0];
        (r.i, r.j) = (r.j, r.i);
        if r.i == r.j {
            r.i += 1;
        }
        let e = doc.to_algebra().unwrap_err();
        assert_eq!(e.field, "brackets[0]");
        assert!(e.message.contains("i > j"));
    }

    #[test]
    fn bad_scalar_names_the_term() {
        let mut doc = ScDocument::from_algebra(&gl11());
        doc.brackets[1].terms[0].coeff = "1/0".into();
        assert_eq!(doc.to_algebra().unwrap_err().field, "brackets[1].terms[0]");
    }

    #[test]
    fn truncated_text_is_a_parse_error() {
        let json = ScDocument::from_algebra(&gl11()).to_json();
        let e = parse_sc(&json[..json.len() / 2], Path::new("t.json")).unwrap_err();
        assert!(matches!(e, FileError::Parse { line, .. } if line > 1));
    }

    #[test]
    fn jacobi_violation_loads_flagged() {
        let spec: AlgebraSpec = "sl:2|1".parse().unwrap();
        let g = spec.build().unwrap().algebra().clone();
        let mut doc = ScDocument::from_algebra(&g);
        doc.brackets[0].terms[0].coeff = "7".into();
        let loaded = parse_sc(&doc.to_json(), Path::new("m.json")).unwrap();
        assert!(!loaded.axioms.passed());
        assert!(loaded.flagged());
    }
}
