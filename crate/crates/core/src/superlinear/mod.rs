//! Graded linear algebra: super vector spaces, sparse vectors and maps,
//! echelon reduction, linear solving and quotients.

mod echelon;
pub(crate) use echelon::solution_from_echelon;
mod frame;
mod linear_map;
mod quotient;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Add;

pub use echelon::{echelonize, echelonize_symbolic, solve_linear, Echelon, LinearSolution};
pub use frame::Frame;
pub use linear_map::LinearMap;
pub use quotient::{quotient_construct, Quotient};

use crate::error::{Error, Result};
use crate::scalars::{Coeff, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u8) -> Self {
        if b & 1 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn from_degree(d: i32) -> Self {
        Parity::from_bit(d.rem_euclid(2) as u8)
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// `(−1)^{|a||b|}` as a sign.
    pub fn koszul(a: Parity, b: Parity) -> i64 {
        if a.is_odd() && b.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit((self.bit() + rhs.bit()) % 2)
    }
}

/// A ℤ₂-graded space with a labelled basis and an optional ℤ-degree per
/// basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    parity: Vec<Parity>,
    degree: Option<Vec<i32>>,
    labels: Vec<String>,
}

impl SuperSpace {
    pub fn new(parity: Vec<Parity>, degree: Option<Vec<i32>>, labels: Vec<String>) -> Result<Self> {
        let dim = parity.len();
        if labels.len() != dim {
            return Err(Error::Format(alloc::format!(
                "{} labels for dimension {dim}",
                labels.len()
            )));
        }
        if let Some(d) = &degree {
            if d.len() != dim {
                return Err(Error::Format(alloc::format!("{} degrees for dimension {dim}", d.len())));
            }
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Format(alloc::format!("duplicate label `{l}`")));
            }
        }
        Ok(SuperSpace { parity, degree, labels })
    }

    /// Unlabelled space with generated labels `b1, b2, …`.
    pub fn anonymous(parity: Vec<Parity>) -> Self {
        let labels = (1..=parity.len()).map(|i| alloc::format!("b{i}")).collect();
        SuperSpace {
            parity,
            degree: None,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn degree(&self, i: usize) -> Option<i32> {
        self.degree.as_ref().map(|d| d[i])
    }

    pub fn degrees(&self) -> Option<&[i32]> {
        self.degree.as_deref()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn odd_dim(&self) -> usize {
        self.parity.iter().filter(|p| p.is_odd()).count()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Basis indices of the given ℤ-degree.
    pub fn degree_indices(&self, d: i32) -> Vec<usize> {
        match &self.degree {
            None => Vec::new(),
            Some(deg) => (0..deg.len()).filter(|&i| deg[i] == d).collect(),
        }
    }

    /// Subspace spanned by the given basis indices, in that order.
    pub fn restrict(&self, idx: &[usize]) -> SuperSpace {
        SuperSpace {
            parity: idx.iter().map(|&i| self.parity[i]).collect(),
            degree: self.degree.as_ref().map(|d| idx.iter().map(|&i| d[i]).collect()),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
        }
    }

    /// Parity of a vector, if it is homogeneous and nonzero.
    pub fn parity_of<T: Coeff>(&self, v: &SparseVec<T>) -> Option<Parity> {
        let mut p = None;
        for (i, _) in v.iter() {
            let q = self.parity[i];
            match p {
                None => p = Some(q),
                Some(r) if r != q => return None,
                _ => {}
            }
        }
        p
    }
}

/// Sparse vector with no stored zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseVec<T: Coeff = Scalar> {
    dim: usize,
    entries: BTreeMap<usize, T>,
}

pub type Vector = SparseVec<Scalar>;

impl<T: Coeff> SparseVec<T> {
    pub fn zero(dim: usize) -> Self {
        SparseVec {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn basis(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.set(i, T::from_scalar(Scalar::one()));
        v
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, T)>) -> Result<Self> {
        let mut v = Self::zero(dim);
        for (i, c) in entries {
            if i >= dim {
                return Err(Error::IndexOutOfRange { index: i, bound: dim });
            }
            v.add_at(i, &c);
        }
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize) -> Option<&T> {
        self.entries.get(&i)
    }

    pub fn set(&mut self, i: usize, c: T) {
        assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_at(&mut self, i: usize, c: &T) {
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &T)> {
        self.entries.iter().map(|(&i, c)| (i, c))
    }

    pub fn into_entries(self) -> BTreeMap<usize, T> {
        self.entries
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn leading(&self) -> Option<(usize, &T)> {
        self.entries.iter().next().map(|(&i, c)| (i, c))
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::SpaceMismatch {
                expected: dim,
                found: self.dim,
            })
        }
    }

    /// `self += c·other`.
    pub fn axpy(&mut self, c: &T, other: &SparseVec<T>) {
        debug_assert_eq!(self.dim, other.dim);
        for (i, x) in other.iter() {
            self.add_at(i, &c.mul_ref(x));
        }
    }

    /// `self += c·other` for a scalar factor.
    pub fn axpy_scalar(&mut self, c: &Scalar, other: &SparseVec<T>) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (i, x) in other.iter() {
            self.add_at(i, &x.scale(c));
        }
    }

    pub fn add(&self, other: &SparseVec<T>) -> SparseVec<T> {
        let mut out = self.clone();
        out.axpy_scalar(&Scalar::one(), other);
        out
    }

    pub fn sub(&self, other: &SparseVec<T>) -> SparseVec<T> {
        let mut out = self.clone();
        out.axpy_scalar(&Scalar::from_integer(-1), other);
        out
    }

    pub fn scale(&self, c: &Scalar) -> SparseVec<T> {
        let mut out = Self::zero(self.dim);
        out.axpy_scalar(c, self);
        out
    }

    pub fn scale_by(&self, c: &T) -> SparseVec<T> {
        let mut out = Self::zero(self.dim);
        out.axpy(c, self);
        out
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> SparseVec<U> {
        let mut out = SparseVec::zero(self.dim);
        for (i, c) in self.iter() {
            out.set(i, f(c));
        }
        out
    }
}

impl Vector {
    pub fn lift<T: Coeff>(&self) -> SparseVec<T> {
        self.map(|c| T::from_scalar(c.clone()))
    }
}

impl<T: Coeff + core::fmt::Display> SparseVec<T> {
    /// Human-readable combination of labels, e.g. `e11 - 2*e22`.
    pub fn describe(&self, labels: &[String]) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (i, c)) in self.iter().enumerate() {
            let cs = alloc::format!("{c}");
            let (neg, body) = match cs.strip_prefix('-') {
                Some(b) if !b.contains(['+', '-']) => (true, String::from(b)),
                _ => (false, cs),
            };
            let body = if body.contains(['+', '-']) {
                alloc::format!("({body})")
            } else {
                body
            };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if body != "1" {
                let _ = write!(s, "{body}*");
            }
            s.push_str(&labels[i]);
        }
        s
    }
}
