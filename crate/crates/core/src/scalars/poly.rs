use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// Exponent vector, ordered graded-lexicographically: total degree first,
/// then lexicographically along the declared variable order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(alloc::vec![0; arity])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial over ℚ(i) in an ordered list of named
/// parameters. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Poly {
    vars: Arc<[String]>,
    terms: BTreeMap<Monomial, Scalar>,
}

pub type Assignment = BTreeMap<String, Scalar>;

impl Poly {
    pub fn zero() -> Self {
        Poly {
            vars: Arc::from(Vec::<String>::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Scalar) -> Self {
        Self::constant_in(&Arc::from(Vec::<String>::new()), c)
    }

    pub fn constant_in(vars: &Arc<[String]>, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(vars.len()), c);
        }
        Poly {
            vars: vars.clone(),
            terms,
        }
    }

    /// The polynomial `name` over the given variable list.
    pub fn variable(vars: &Arc<[String]>, name: &str) -> Result<Self> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| Error::UnboundParameter(name.into()))?;
        let mut exps = alloc::vec![0; vars.len()];
        exps[idx] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), Scalar::one());
        Ok(Poly {
            vars: vars.clone(),
            terms,
        })
    }

    /// Convenience: a variable list from string slices.
    pub fn ring(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| String::from(*s)).collect::<Vec<_>>().into()
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The constant value, if the polynomial has no non-constant terms.
    pub fn as_constant(&self) -> Option<Scalar> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_default())
    }

    /// Leading term in the graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Names of the variables that actually occur.
    pub fn occurring(&self) -> Vec<String> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .map(|i| self.vars[i].clone())
            .collect()
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.index_of(name) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Re-expresses the polynomial over `vars`, which must contain every
    /// occurring variable.
    pub fn with_vars(&self, vars: &Arc<[String]>) -> Result<Poly> {
        if Arc::ptr_eq(&self.vars, vars) || self.vars[..] == vars[..] {
            return Ok(Poly {
                vars: vars.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match vars.iter().position(|w| w == v) {
                Some(j) => map.push(Some(j)),
                None if self.terms.keys().all(|m| m.0[i] == 0) => map.push(None),
                None => return Err(Error::UnboundParameter(v.clone())),
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut e = alloc::vec![0; vars.len()];
            for (i, j) in map.iter().enumerate() {
                if let Some(j) = j {
                    e[*j] = m.0[i];
                }
            }
            terms.insert(Monomial(e), c.clone());
        }
        Ok(Poly {
            vars: vars.clone(),
            terms,
        })
    }

    fn aligned(&self, other: &Poly) -> (Poly, Poly) {
        if Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..] {
            return (self.clone(), other.with_vars(&self.vars).unwrap());
        }
        let vars = merge_vars(&self.vars, &other.vars);
        (self.with_vars(&vars).unwrap(), other.with_vars(&vars).unwrap())
    }

    fn same_vars(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars[..] == other.vars[..]
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if !self.same_vars(other) {
            let (a, b) = self.aligned(other);
            return a.add(&b);
        }
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Poly) {
        if !self.same_vars(other) {
            *self = self.add(other);
            return;
        }
        for (m, c) in &other.terms {
            add_term(&mut self.terms, m.clone(), c);
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if !self.same_vars(other) {
            let (a, b) = self.aligned(other);
            return a.mul(&b);
        }
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                add_term(&mut terms, m1.mul(m2), &(c1 * c2));
            }
        }
        Poly {
            vars: self.vars.clone(),
            terms,
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::constant_in(&self.vars, Scalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact substitution of every occurring variable.
    pub fn evaluate(&self, assignment: &Assignment) -> Result<Scalar> {
        let mut values = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            match assignment.get(v) {
                Some(x) => values.push(Some(x.clone())),
                None if self.terms.keys().all(|m| m.0[i] == 0) => values.push(None),
                None => return Err(Error::UnboundParameter(v.clone())),
            }
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &values[i].as_ref().unwrap().pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Replaces the variable `name` by `value` everywhere.
    pub fn substitute(&self, name: &str, value: &Poly) -> Poly {
        let Some(idx) = self.index_of(name) else {
            return self.clone();
        };
        if !self.same_vars(value) {
            let vars = merge_vars(&self.vars, &value.vars);
            let value = value.with_vars(&vars).unwrap();
            return self.with_vars(&vars).unwrap().substitute(name, &value);
        }
        let value = value.clone();
        let mut out = Poly {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        let mut powers: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut rest = m.clone();
            rest.0[idx] = 0;
            let mut base = BTreeMap::new();
            base.insert(rest, c.clone());
            let base = Poly {
                vars: self.vars.clone(),
                terms: base,
            };
            if e == 0 {
                out.add_assign(&base);
                continue;
            }
            while powers.len() < e {
                let next = match powers.last() {
                    None => value.clone(),
                    Some(p) => p.mul(&value),
                };
                powers.push(next);
            }
            out.add_assign(&base.mul(&powers[e - 1]));
        }
        out
    }

    /// Substitutes every assigned variable, leaving the others symbolic.
    pub fn partial_evaluate(&self, assignment: &Assignment) -> Poly {
        let mut out = self.clone();
        for (name, value) in assignment {
            if out.degree_in(name) > 0 {
                out = out.substitute(name, &Poly::constant_in(&out.vars, value.clone()));
            }
        }
        out
    }

    /// If `self = c·name + rest` with `c` a nonzero constant and `rest`
    /// free of `name`, returns `(c, rest)`.
    pub fn linear_in(&self, name: &str) -> Option<(Scalar, Poly)> {
        let idx = self.index_of(name)?;
        let mut coef = None;
        let mut rest = BTreeMap::new();
        for (m, c) in &self.terms {
            match m.0[idx] {
                0 => {
                    rest.insert(m.clone(), c.clone());
                }
                1 if m.degree() == 1 => coef = Some(c.clone()),
                _ => return None,
            }
        }
        coef.map(|c| {
            (
                c,
                Poly {
                    vars: self.vars.clone(),
                    terms: rest,
                },
            )
        })
    }

    /// Coefficients low→high if the polynomial involves at most `name`.
    pub fn univariate_coeffs(&self, name: &str) -> Option<Vec<Scalar>> {
        let idx = self.index_of(name);
        let mut coeffs: Vec<Scalar> = Vec::new();
        for (m, c) in &self.terms {
            let e = match idx {
                Some(i) => {
                    if m.0.iter().enumerate().any(|(j, &e)| j != i && e > 0) {
                        return None;
                    }
                    m.0[i] as usize
                }
                None if m.is_one() => 0,
                None => return None,
            };
            if coeffs.len() <= e {
                coeffs.resize(e + 1, Scalar::zero());
            }
            coeffs[e] = c.clone();
        }
        Some(coeffs)
    }

    pub fn from_univariate(vars: &Arc<[String]>, name: &str, coeffs: &[Scalar]) -> Result<Poly> {
        let x = Poly::variable(vars, name)?;
        let mut out = Poly::constant_in(vars, Scalar::zero());
        let mut power = Poly::constant_in(vars, Scalar::one());
        for c in coeffs {
            out.add_assign(&power.scale(c));
            power = power.mul(&x);
        }
        Ok(out)
    }

    /// Constraint normal form: divide by the rational content of all
    /// coefficient parts, then make the leading coefficient's real part
    /// positive (its imaginary part when the real part is zero).
    pub fn normalized(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let content = Rational::content(self.terms.values().flat_map(|c| [&c.re, &c.im]));
        let (_, lead) = self.leading().unwrap();
        let negative = if lead.re.is_zero() {
            lead.im.is_negative()
        } else {
            lead.re.is_negative()
        };
        let mut factor = content.inv().unwrap();
        if negative {
            factor = -factor;
        }
        self.scale(&Scalar::real(factor))
    }

    /// Drops variables that do not occur.
    pub fn compact(&self) -> Poly {
        let used: Vec<String> = self.occurring();
        self.with_vars(&Arc::from(used)).unwrap()
    }
}

fn add_term(terms: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    match terms.entry(m) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += c;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

fn merge_vars(a: &Arc<[String]>, b: &Arc<[String]>) -> Arc<[String]> {
    let mut out: Vec<String> = a.to_vec();
    for v in b.iter() {
        if !out.contains(v) {
            out.push(v.clone());
        }
    }
    out.into()
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.same_vars(other) {
            return self.terms == other.terms;
        }
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl Eq for Poly {}

impl From<Scalar> for Poly {
    fn from(c: Scalar) -> Self {
        Poly::constant(c)
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &Scalar, first: bool, bare: bool) -> fmt::Result {
    // Sign handled here so that sums read "a - b" rather than "a + -b".
    let negative = if c.re.is_zero() {
        c.im.is_negative()
    } else {
        c.re.is_negative()
    };
    let mag = if negative { -c } else { c.clone() };
    if first {
        if negative {
            f.write_str("-")?;
        }
    } else if negative {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let compound = !mag.re.is_zero() && !mag.im.is_zero();
    if bare && mag.is_one() {
        return Ok(());
    }
    if compound {
        write!(f, "({mag})")?;
    } else {
        write!(f, "{mag}")?;
    }
    if bare {
        f.write_str("*")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let bare = !m.is_one();
            write_coeff(f, c, k == 0, bare)?;
            let mut first_factor = true;
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first_factor {
                    f.write_str("*")?;
                }
                first_factor = false;
                f.write_str(&self.vars[i])?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
