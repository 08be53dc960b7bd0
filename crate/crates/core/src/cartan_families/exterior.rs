use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::scalars::Scalar;
use crate::superlinear::Parity;

/// An element of the exterior algebra Λ(n). A monomial ξ_{i₁}⋯ξ_{i_k} with
/// `i₁ < … < i_k` is stored as the bitmask of its indices (bit `i` for ξ_{i+1}).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExteriorElement {
    n: usize,
    terms: BTreeMap<u32, Scalar>,
}

/// Sign of `ξ_a ∧ ξ_b` relative to the sorted monomial `ξ_{a|b}`: one factor
/// of −1 per pair `(i ∈ a, j ∈ b)` with `i > j`.
pub(crate) fn wedge_sign(a: u32, b: u32) -> i64 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub(crate) fn mask_label(mask: u32) -> String {
    let mut s = String::new();
    let mut rest = mask;
    while rest != 0 {
        let i = rest.trailing_zeros();
        s.push_str(&format!("x{}", i + 1));
        rest &= rest - 1;
    }
    s
}

impl ExteriorElement {
    pub fn zero(n: usize) -> Self {
        assert!(n <= 31, "at most 31 generators");
        ExteriorElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0)
    }

    pub fn monomial(n: usize, mask: u32) -> Self {
        let mut e = Self::zero(n);
        e.add_term(mask, &Scalar::one());
        e
    }

    /// ξ_{i+1}.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, bound: n });
        }
        Ok(Self::monomial(n, 1 << i))
    }

    /// ξ₁ξ₂⋯ξₙ.
    pub fn top(n: usize) -> Self {
        Self::monomial(n, ((1u64 << n) - 1) as u32)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &Scalar)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, mask: u32) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, mask: u32, c: &Scalar) {
        let v = &self.coeff(mask) + c;
        if v.is_zero() {
            self.terms.remove(&mask);
        } else {
            self.terms.insert(mask, v);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::SpaceMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&Scalar::from_integer(-1)))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.n);
        if !s.is_zero() {
            for (m, c) in self.terms() {
                out.terms.insert(m, c * s);
            }
        }
        out
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n);
        for (a, x) in self.terms() {
            for (b, y) in other.terms() {
                if a & b != 0 {
                    continue;
                }
                let c = &(x * y) * &Scalar::from_integer(wedge_sign(a, b));
                out.add_term(a | b, &c);
            }
        }
        Ok(out)
    }

    /// Left derivative ∂/∂ξ_{j+1}.
    pub fn partial(&self, j: usize) -> Result<Self> {
        if j >= self.n {
            return Err(Error::IndexOutOfRange {
                index: j,
                bound: self.n,
            });
        }
        let bit = 1u32 << j;
        let mut out = Self::zero(self.n);
        for (m, c) in self.terms() {
            if m & bit == 0 {
                continue;
            }
            let sign = if (m & (bit - 1)).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            };
            out.add_term(m & !bit, &c.scale(&crate::scalars::Rational::from_integer(sign)));
        }
        Ok(out)
    }

    /// Parity when homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut it = self.terms.keys().map(|m| Parity::from_bit((m.count_ones() % 2) as u8));
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Even and odd parts.
    pub fn split(&self) -> (Self, Self) {
        let mut even = Self::zero(self.n);
        let mut odd = Self::zero(self.n);
        for (m, c) in self.terms() {
            if m.count_ones().is_multiple_of(2) {
                even.terms.insert(m, c.clone());
            } else {
                odd.terms.insert(m, c.clone());
            }
        }
        (even, odd)
    }
}

impl fmt::Display for ExteriorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (t, (m, c)) in self.terms().enumerate() {
            let label = if m == 0 { String::from("1") } else { mask_label(m) };
            let coeff = if c.is_one() {
                String::new()
            } else if *c == Scalar::from_integer(-1) {
                String::from("-")
            } else {
                format!("({c})*")
            };
            if t > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{coeff}{label}")?;
        }
        Ok(())
    }
}

/// A derivation Σ f_j ∂/∂ξ_j of Λ(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperDerivation {
    coeffs: Vec<ExteriorElement>,
}

impl SuperDerivation {
    pub fn zero(n: usize) -> Self {
        SuperDerivation {
            coeffs: (0..n).map(|_| ExteriorElement::zero(n)).collect(),
        }
    }

    pub fn from_coeffs(coeffs: Vec<ExteriorElement>) -> Result<Self> {
        let n = coeffs.len();
        if let Some(bad) = coeffs.iter().find(|f| f.n() != n) {
            return Err(Error::SpaceMismatch {
                expected: n,
                found: bad.n(),
            });
        }
        Ok(SuperDerivation { coeffs })
    }

    /// ξ_S ∂/∂ξ_{j+1}.
    pub fn term(n: usize, mask: u32, j: usize) -> Self {
        let mut d = Self::zero(n);
        d.coeffs[j] = ExteriorElement::monomial(n, mask);
        d
    }

    /// ∂/∂ξ_{j+1}.
    pub fn partial(n: usize, j: usize) -> Self {
        Self::term(n, 0, j)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, j: usize) -> &ExteriorElement {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExteriorElement::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        if self.n() != other.n() {
            return Err(Error::SpaceMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        Ok(SuperDerivation { coeffs })
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        SuperDerivation {
            coeffs: self.coeffs.iter().map(|f| f.scale(s)).collect(),
        }
    }

    /// Left multiplication of every coefficient by `g`.
    pub fn left_mul(&self, g: &ExteriorElement) -> Result<Self> {
        let coeffs = self.coeffs.iter().map(|f| g.wedge(f)).collect::<Result<Vec<_>>>()?;
        Ok(SuperDerivation { coeffs })
    }

    /// `D(g) = Σ f_j ∂_j(g)`.
    pub fn apply(&self, g: &ExteriorElement) -> Result<ExteriorElement> {
        let mut out = ExteriorElement::zero(self.n());
        for (j, f) in self.coeffs.iter().enumerate() {
            if !f.is_zero() {
                out = out.add(&f.wedge(&g.partial(j)?)?)?;
            }
        }
        Ok(out)
    }

    /// Parity when homogeneous: ξ_S∂_j has parity |S| + 1.
    pub fn parity(&self) -> Option<Parity> {
        let mut parities = self
            .coeffs
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.parity().map(|p| p + Parity::Odd));
        let first = match parities.next() {
            None => return Some(Parity::Even),
            Some(p) => p?,
        };
        for p in parities {
            if p? != first {
                return None;
            }
        }
        Some(first)
    }

    /// Principal degree when homogeneous: ξ_S∂_j has degree |S| − 1.
    pub fn degree(&self) -> Option<i32> {
        let mut degs = self
            .coeffs
            .iter()
            .flat_map(|f| f.terms().map(|(m, _)| m.count_ones() as i32 - 1));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    fn split(&self) -> (Self, Self) {
        let n = self.n();
        let mut even = Self::zero(n);
        let mut odd = Self::zero(n);
        for (j, f) in self.coeffs.iter().enumerate() {
            let (fe, fo) = f.split();
            // an odd coefficient gives an even derivation
            even.coeffs[j] = fo;
            odd.coeffs[j] = fe;
        }
        (even, odd)
    }

    fn bracket_homogeneous(&self, other: &Self, sign: i64) -> Result<Self> {
        let coeffs = (0..self.n())
            .map(|k| {
                let left = self.apply(other.coeff(k))?;
                let right = other.apply(self.coeff(k))?.scale(&Scalar::from_integer(sign));
                left.sub(&right)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SuperDerivation { coeffs })
    }

    /// `D₁∘D₂ − (−1)^{|D₁||D₂|} D₂∘D₁`, read off on the generators; extended
    /// bilinearly over parity parts.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SpaceMismatch {
                expected: self.n(),
                found: other.n(),
            });
        }
        let (a0, a1) = self.split();
        let (b0, b1) = other.split();
        let mut out = Self::zero(self.n());
        for (a, pa) in [(&a0, Parity::Even), (&a1, Parity::Odd)] {
            for (b, pb) in [(&b0, Parity::Even), (&b1, Parity::Odd)] {
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                out = out.add(&a.bracket_homogeneous(b, Parity::koszul(pa, pb))?)?;
            }
        }
        Ok(out)
    }

    /// Σ_j ∂_j(f_j).
    pub fn divergence(&self) -> ExteriorElement {
        let mut out = ExteriorElement::zero(self.n());
        for (j, f) in self.coeffs.iter().enumerate() {
            out = out.add(&f.partial(j).expect("index below n")).expect("same n");
        }
        out
    }
}

impl fmt::Display for SuperDerivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*d{}", j + 1)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xi(n: usize, i: usize) -> ExteriorElement {
        ExteriorElement::generator(n, i - 1).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let x1 = xi(3, 1);
        let x2 = xi(3, 2);
        assert_eq!(
            x2.wedge(&x1).unwrap(),
            x1.wedge(&x2).unwrap().scale(&Scalar::from_integer(-1))
        );
        assert!(x1.wedge(&x1).unwrap().is_zero());
        let one = ExteriorElement::one(3);
        let lhs = one.add(&x1).unwrap().wedge(&one.add(&x2).unwrap()).unwrap();
        let rhs = one
            .add(&x1)
            .unwrap()
            .add(&x2)
            .unwrap()
            .add(&x1.wedge(&x2).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
        assert!(x1.wedge(&xi(4, 2)).is_err());
    }

    #[test]
    fn partial_examples() {
        let x12 = xi(3, 1).wedge(&xi(3, 2)).unwrap();
        assert_eq!(x12.partial(0).unwrap(), xi(3, 2));
        assert_eq!(x12.partial(1).unwrap(), xi(3, 1).scale(&Scalar::from_integer(-1)));
        assert!(x12.partial(2).unwrap().is_zero());
        assert!(x12.partial(3).is_err());
    }

    #[test]
    fn bracket_examples() {
        let n = 3;
        // [∂_j, ξ_j ∂_l] = ∂_l
        let b = SuperDerivation::partial(n, 0)
            .bracket(&SuperDerivation::term(n, 0b001, 2))
            .unwrap();
        assert_eq!(b, SuperDerivation::partial(n, 2));
        // [ξ_s∂_t, ξ_p∂_q] = δ_tp ξ_s∂_q − δ_sq ξ_p∂_t
        for (s, t, p, q) in [(0, 1, 1, 2), (0, 1, 2, 0), (0, 1, 1, 0), (2, 2, 2, 1)] {
            let lhs = SuperDerivation::term(n, 1 << s, t)
                .bracket(&SuperDerivation::term(n, 1 << p, q))
                .unwrap();
            let mut rhs = SuperDerivation::zero(n);
            if t == p {
                rhs = rhs.add(&SuperDerivation::term(n, 1 << s, q)).unwrap();
            }
            if s == q {
                rhs = rhs
                    .add(&SuperDerivation::term(n, 1 << p, t).scale(&Scalar::from_integer(-1)))
                    .unwrap();
            }
            assert_eq!(lhs, rhs, "({s},{t},{p},{q})");
        }
        let d = SuperDerivation::partial(n, 1);
        assert!(d.bracket(&d).unwrap().is_zero());
    }

    #[test]
    fn divergence_examples() {
        let n = 2;
        assert_eq!(SuperDerivation::term(n, 0b01, 0).divergence(), ExteriorElement::one(n));
        assert!(SuperDerivation::term(n, 0b01, 1).divergence().is_zero());
        let rot = SuperDerivation::term(n, 0b10, 0)
            .add(&SuperDerivation::term(n, 0b01, 1).scale(&Scalar::from_integer(-1)))
            .unwrap();
        assert!(rot.divergence().is_zero());
    }

    #[test]
    fn degree_and_parity() {
        let d = SuperDerivation::term(3, 0b011, 0);
        assert_eq!(d.degree(), Some(1));
        assert_eq!(d.parity(), Some(Parity::Odd));
        assert_eq!(SuperDerivation::partial(3, 0).parity(), Some(Parity::Odd));
        assert_eq!(SuperDerivation::term(3, 0b1, 0).parity(), Some(Parity::Even));
    }
}
