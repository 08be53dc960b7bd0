//! Parsing of algebra spec strings (`gl:2|1`, `St:4`, ...) and dispatch to
//! the family builders.

use alloc::format;
use alloc::string::{String, ToString};
use core::fmt;
use core::str::FromStr;

use crate::cartan_families::{build_cartan, CartanAlgebra, CartanFamily, CartanSpec};
use crate::error::{Error, Result};
use crate::matrix_families::{build_classical, FamilySpec, MatrixAlgebra};
use crate::superalgebra::SuperAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraSpec {
    Matrix(FamilySpec),
    Cartan(CartanSpec),
}

impl AlgebraSpec {
    pub fn check(&self) -> Result<()> {
        match self {
            AlgebraSpec::Matrix(s) => s.check(),
            AlgebraSpec::Cartan(s) => s.check(),
        }
    }

    pub fn spec_string(&self) -> String {
        match self {
            AlgebraSpec::Matrix(s) => s.spec_string(),
            AlgebraSpec::Cartan(s) => s.spec_string(),
        }
    }

    /// Cartan-type algebras are all simple; gl and Q̃ are the only
    /// non-simple classical members.
    pub fn is_simple(&self) -> bool {
        match self {
            AlgebraSpec::Matrix(s) => s.is_simple(),
            AlgebraSpec::Cartan(_) => true,
        }
    }

    pub fn build(&self) -> Result<BuiltAlgebra> {
        Ok(match *self {
            AlgebraSpec::Matrix(s) => BuiltAlgebra::Matrix(build_classical(s)?),
            AlgebraSpec::Cartan(s) => BuiltAlgebra::Cartan(build_cartan(s)?),
        })
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraSpec::Matrix(s) => write!(f, "{s}"),
            AlgebraSpec::Cartan(s) => write!(f, "{s}"),
        }
    }
}

fn number(s: &str, whole: &str) -> Result<usize> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad rank `{s}` in `{whole}`")))
}

fn pair(s: &str, whole: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once('|')
        .ok_or_else(|| Error::Parse(format!("expected `m|n` in `{whole}`")))?;
    Ok((number(a, whole)?, number(b, whole)?))
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Accepts `gl:m|n`, `sl:m|n`, `psl:n|n` (or `psl:n`), `P:k`, `Q:k`,
    /// `Qt:k`, `osp:m|2n`, `W:n`, `S:n`, `St:n`, `H:n`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("expected `family:rank`, got `{s}`")))?;
        let cartan = |family| Ok(AlgebraSpec::Cartan(CartanSpec::new(family, number(arg, s)?)));
        let spec = match kind {
            "gl" => {
                let (m, n) = pair(arg, s)?;
                AlgebraSpec::Matrix(FamilySpec::Gl { m, n })
            }
            "sl" => {
                let (m, n) = pair(arg, s)?;
                AlgebraSpec::Matrix(FamilySpec::Sl { m, n })
            }
            "psl" => {
                let n = if arg.contains('|') {
                    let (m, n) = pair(arg, s)?;
                    if m != n {
                        return Err(Error::Parse(format!("psl needs equal blocks, got `{s}`")));
                    }
                    n
                } else {
                    number(arg, s)?
                };
                AlgebraSpec::Matrix(FamilySpec::Psl { n })
            }
            "P" => AlgebraSpec::Matrix(FamilySpec::P { k: number(arg, s)? }),
            "Q" => AlgebraSpec::Matrix(FamilySpec::Q { k: number(arg, s)? }),
            "Qt" => AlgebraSpec::Matrix(FamilySpec::QTilde { k: number(arg, s)? }),
            "osp" => {
                let (m, n2) = pair(arg, s)?;
                AlgebraSpec::Matrix(FamilySpec::Osp { m, n2 })
            }
            "W" => cartan(CartanFamily::W)?,
            "S" => cartan(CartanFamily::S)?,
            "St" => cartan(CartanFamily::STilde)?,
            "H" => cartan(CartanFamily::H)?,
            _ => return Err(Error::Parse(format!("unknown family `{kind}` in `{s}`"))),
        };
        spec.check()?;
        Ok(spec)
    }
}

/// A constructed algebra with whatever realization it came with.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum BuiltAlgebra {
    Matrix(MatrixAlgebra),
    Cartan(CartanAlgebra),
    /// Read from structure constants; no realization is known.
    Loaded(SuperAlgebra),
}

impl BuiltAlgebra {
    pub fn algebra(&self) -> &SuperAlgebra {
        match self {
            BuiltAlgebra::Matrix(m) => m.algebra(),
            BuiltAlgebra::Cartan(c) => c.algebra(),
            BuiltAlgebra::Loaded(g) => g,
        }
    }

    pub fn spec(&self) -> Option<AlgebraSpec> {
        match self {
            BuiltAlgebra::Matrix(m) => Some(AlgebraSpec::Matrix(m.spec)),
            BuiltAlgebra::Cartan(c) => Some(AlgebraSpec::Cartan(c.spec)),
            BuiltAlgebra::Loaded(_) => None,
        }
    }

    pub fn name(&self) -> String {
        self.algebra().name().to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_strings_round_trip() {
        for s in [
            "gl:2|1", "sl:3|1", "psl:2|2", "P:2", "Q:2", "Qt:2", "osp:3|2", "W:3", "S:3", "St:4", "H:4",
        ] {
            let spec: AlgebraSpec = s.parse().unwrap();
            assert_eq!(spec.spec_string(), s);
        }
        assert_eq!("psl:3".parse::<AlgebraSpec>().unwrap().spec_string(), "psl:3|3");
    }

    #[test]
    fn bad_specs_are_rejected() {
        for s in ["gl", "gl:2", "sl:2|2", "psl:2|3", "St:5", "X:3", "W:two", "osp:3|3"] {
            assert!(s.parse::<AlgebraSpec>().is_err(), "{s}");
        }
    }

    #[test]
    fn build_dispatches() {
        let g = "sl:2|1".parse::<AlgebraSpec>().unwrap().build().unwrap();
        assert_eq!(g.algebra().dim(), 8);
        assert_eq!(g.spec().unwrap().to_string(), "sl(2|1)");
        let w = "W:3".parse::<AlgebraSpec>().unwrap().build().unwrap();
        assert_eq!(w.algebra().dim(), 24);
    }
}
