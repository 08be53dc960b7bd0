use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::scalars::Scalar;
use crate::superlinear::{Parity, SparseVec, Vector};

/// The four blocks of an `(m+n) × (m+n)` supermatrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    A,
    B,
    C,
    D,
}

/// Block sizes of gl(m|n) and the flat coordinate system on it: A-block
/// entries row-major, then B, then C, then D.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatrixShape {
    pub m: usize,
    pub n: usize,
}

impl MatrixShape {
    pub fn new(m: usize, n: usize) -> Self {
        MatrixShape { m, n }
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    pub fn flat_dim(&self) -> usize {
        self.size() * self.size()
    }

    pub fn block(&self, r: usize, c: usize) -> Block {
        match (r < self.m, c < self.m) {
            (true, true) => Block::A,
            (true, false) => Block::B,
            (false, true) => Block::C,
            (false, false) => Block::D,
        }
    }

    pub fn parity(&self, r: usize, c: usize) -> Parity {
        match self.block(r, c) {
            Block::A | Block::D => Parity::Even,
            Block::B | Block::C => Parity::Odd,
        }
    }

    pub fn flat(&self, r: usize, c: usize) -> usize {
        let (m, n) = (self.m, self.n);
        match self.block(r, c) {
            Block::A => r * m + c,
            Block::B => m * m + r * n + (c - m),
            Block::C => m * m + m * n + (r - m) * m + c,
            Block::D => m * m + 2 * m * n + (r - m) * n + (c - m),
        }
    }

    pub fn unflat(&self, k: usize) -> (usize, usize) {
        let (m, n) = (self.m, self.n);
        if k < m * m {
            (k / m, k % m)
        } else if k < m * m + m * n {
            let t = k - m * m;
            (t / n, m + t % n)
        } else if k < m * m + 2 * m * n {
            let t = k - m * m - m * n;
            (m + t / m, t % m)
        } else {
            let t = k - m * m - 2 * m * n;
            (m + t / n, m + t % n)
        }
    }

    pub fn flat_parity(&self, k: usize) -> Parity {
        let (r, c) = self.unflat(k);
        self.parity(r, c)
    }

    /// `e12`, or `e1,12` once indices need two digits.
    pub fn label(&self, r: usize, c: usize) -> String {
        if self.size() <= 9 {
            format!("e{}{}", r + 1, c + 1)
        } else {
            format!("e{},{}", r + 1, c + 1)
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.flat_dim())
            .map(|k| {
                let (r, c) = self.unflat(k);
                self.label(r, c)
            })
            .collect()
    }
}

/// A sparse supermatrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatrixElement {
    shape: MatrixShape,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl MatrixElement {
    pub fn zero(shape: MatrixShape) -> Self {
        MatrixElement {
            shape,
            entries: BTreeMap::new(),
        }
    }

    pub fn unit(shape: MatrixShape, r: usize, c: usize) -> Self {
        let mut e = Self::zero(shape);
        e.set(r, c, Scalar::one());
        e
    }

    pub fn identity(shape: MatrixShape) -> Self {
        let mut e = Self::zero(shape);
        for i in 0..shape.size() {
            e.set(i, i, Scalar::one());
        }
        e
    }

    /// Sum of `c · e_{r,s}` over the listed 0-based entries.
    pub fn from_terms(shape: MatrixShape, terms: &[(usize, usize, i64)]) -> Self {
        let mut e = Self::zero(shape);
        for &(r, c, v) in terms {
            e.add_at(r, c, &Scalar::from_integer(v));
        }
        e
    }

    pub fn shape(&self) -> MatrixShape {
        self.shape
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.shape.size() && c < self.shape.size(), "entry outside the grid");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let s = &self.get(r, c) + v;
        self.set(r, c, s);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn add(&self, other: &MatrixElement) -> MatrixElement {
        let mut out = self.clone();
        for (r, c, v) in other.entries() {
            out.add_at(r, c, v);
        }
        out
    }

    pub fn sub(&self, other: &MatrixElement) -> MatrixElement {
        self.add(&other.scale(&Scalar::from_integer(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> MatrixElement {
        let mut out = Self::zero(self.shape);
        for (r, c, v) in self.entries() {
            out.set(r, c, v * s);
        }
        out
    }

    pub fn mul(&self, other: &MatrixElement) -> MatrixElement {
        let mut by_row: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (r, c, v) in other.entries() {
            by_row.entry(r).or_default().push((c, v));
        }
        let mut out = Self::zero(self.shape);
        for (r, k, v) in self.entries() {
            if let Some(row) = by_row.get(&k) {
                for &(c, w) in row {
                    out.add_at(r, c, &(v * w));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> MatrixElement {
        let mut out = Self::zero(self.shape);
        for (r, c, v) in self.entries() {
            out.set(c, r, v.clone());
        }
        out
    }

    /// Even and odd parts.
    pub fn split(&self) -> (MatrixElement, MatrixElement) {
        let mut even = Self::zero(self.shape);
        let mut odd = Self::zero(self.shape);
        for (r, c, v) in self.entries() {
            match self.shape.parity(r, c) {
                Parity::Even => even.set(r, c, v.clone()),
                Parity::Odd => odd.set(r, c, v.clone()),
            }
        }
        (even, odd)
    }

    /// `xy − (−1)^{|x||y|} yx`, extended bilinearly over the parity parts.
    pub fn supercommutator(&self, other: &MatrixElement) -> MatrixElement {
        let (x0, x1) = self.split();
        let (y0, y1) = other.split();
        let mut out = Self::zero(self.shape);
        for (x, px) in [(&x0, Parity::Even), (&x1, Parity::Odd)] {
            for (y, py) in [(&y0, Parity::Even), (&y1, Parity::Odd)] {
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                let s = Scalar::from_integer(Parity::koszul(px, py));
                out = out.add(&x.mul(y)).sub(&y.mul(x).scale(&s));
            }
        }
        out
    }

    /// `tr A − tr D`.
    pub fn supertrace(&self) -> Scalar {
        let mut s = Scalar::zero();
        for i in 0..self.shape.size() {
            let v = self.get(i, i);
            if i < self.shape.m {
                s += &v;
            } else {
                s -= &v;
            }
        }
        s
    }

    pub fn to_flat(&self) -> Vector {
        let mut v = Vector::zero(self.shape.flat_dim());
        for (r, c, x) in self.entries() {
            v.set(self.shape.flat(r, c), x.clone());
        }
        v
    }

    pub fn from_flat(shape: MatrixShape, v: &SparseVec<Scalar>) -> Self {
        let mut e = Self::zero(shape);
        for (k, x) in v.iter() {
            let (r, c) = shape.unflat(k);
            e.set(r, c, x.clone());
        }
        e
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.entries().map(|(r, c, _)| self.shape.parity(r, c));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }
}

/// Dense square matrices used for the conjugating blocks of `Ad`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMat {
    size: usize,
    data: Vec<Scalar>,
}

impl DenseMat {
    pub fn zero(size: usize) -> Self {
        DenseMat {
            size,
            data: alloc::vec![Scalar::zero(); size * size],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zero(size);
        for i in 0..size {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let size = rows.len();
        let mut m = Self::zero(size);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), size, "matrix must be square");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, Scalar::from_integer(x));
            }
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.size + j] = v;
    }

    pub fn mul(&self, other: &DenseMat) -> DenseMat {
        let n = self.size;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j) + &(a * other.get(k, j));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> DenseMat {
        let mut out = Self::zero(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Option<DenseMat> {
        let n = self.size;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                    inv.data.swap(p * n + j, col * n + j);
                }
            }
            let f = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j) * &f);
                inv.set(col, j, inv.get(col, j) * &f);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let g = a.get(r, col).clone();
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - &(&g * a.get(col, j)));
                    inv.set(r, j, inv.get(r, j) - &(&g * inv.get(col, j)));
                }
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Scalar {
        let n = self.size;
        let mut a = self.clone();
        let mut det = Scalar::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Scalar::zero();
            };
            if p != col {
                for j in 0..n {
                    a.data.swap(p * n + j, col * n + j);
                }
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det = &det * &pivot;
            let f = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let g = a.get(r, col) * &f;
                if g.is_zero() {
                    continue;
                }
                for j in col..n {
                    a.set(r, j, a.get(r, j) - &(&g * a.get(col, j)));
                }
            }
        }
        det
    }

    /// `diag(X, Y)` as a supermatrix of shape `(|X| | |Y|)`.
    pub fn block_diag(x: &DenseMat, y: &DenseMat) -> MatrixElement {
        let shape = MatrixShape::new(x.size, y.size);
        let mut e = MatrixElement::zero(shape);
        for i in 0..x.size {
            for j in 0..x.size {
                e.set(i, j, x.get(i, j).clone());
            }
        }
        for i in 0..y.size {
            for j in 0..y.size {
                e.set(x.size + i, x.size + j, y.get(i, j).clone());
            }
        }
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_coordinates_roundtrip_and_block_order() {
        let s = MatrixShape::new(2, 1);
        for k in 0..s.flat_dim() {
            let (r, c) = s.unflat(k);
            assert_eq!(s.flat(r, c), k);
        }
        assert_eq!(s.unflat(0), (0, 0));
        assert_eq!(s.unflat(4), (0, 2));
        assert_eq!(s.unflat(6), (2, 0));
        assert_eq!(s.unflat(8), (2, 2));
        let odd = (0..9).filter(|&k| s.flat_parity(k).is_odd()).count();
        assert_eq!(odd, 4);
    }

    #[test]
    fn supertrace_examples() {
        let s = MatrixShape::new(2, 1);
        assert_eq!(MatrixElement::identity(s).supertrace(), Scalar::one());
        assert!(MatrixElement::unit(s, 0, 1).supertrace().is_zero());
        assert!(MatrixElement::identity(MatrixShape::new(2, 2)).supertrace().is_zero());
    }

    #[test]
    fn odd_units_anticommute() {
        let s = MatrixShape::new(1, 1);
        let b = MatrixElement::unit(s, 0, 1).supercommutator(&MatrixElement::unit(s, 1, 0));
        assert_eq!(b, MatrixElement::identity(s));
        let e = MatrixElement::unit(s, 0, 0).supercommutator(&MatrixElement::unit(s, 0, 1));
        assert_eq!(e, MatrixElement::unit(s, 0, 1));
    }

    #[test]
    fn dense_inverse_and_det() {
        let x = DenseMat::from_rows(&[&[2, 1], &[7, 4]]);
        assert_eq!(x.det(), Scalar::one());
        assert_eq!(x.mul(&x.inverse().unwrap()), DenseMat::identity(2));
        let sing = DenseMat::from_rows(&[&[1, 2], &[2, 4]]);
        assert!(sing.inverse().is_none());
        assert!(sing.det().is_zero());
    }
}
