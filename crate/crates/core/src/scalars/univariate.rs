//! Dense univariate polynomials over ℚ(i), used for root finding.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use super::{Rational, Scalar};

/// Coefficients low→high with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(pub Vec<Scalar>);

/// Divisor enumeration is skipped above this magnitude.
const DIVISOR_LIMIT: u64 = 1 << 40;

impl UniPoly {
    pub fn new(mut c: Vec<Scalar>) -> Self {
        while c.last().is_some_and(Scalar::is_zero) {
            c.pop();
        }
        UniPoly(c)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Scalar::from_integer(k as i64))
                .collect(),
        )
    }

    fn monic(&self) -> UniPoly {
        match self.0.last() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                UniPoly(self.0.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lead_inv = d.0[dd].inv().unwrap();
        let mut r = self.0.clone();
        if r.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut q = alloc::vec![Scalar::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = &r[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.0.iter().enumerate() {
                let t = &c * dc;
                r[k + j] -= &t;
            }
            q[k] = c;
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors.
    pub fn square_free(&self) -> UniPoly {
        let d = self.derivative();
        if d.is_zero() {
            return self.monic();
        }
        let g = self.gcd(&d);
        self.div_rem(&g).0.monic()
    }

    /// Divides out `(x − r)`.
    pub fn deflate(&self, r: &Scalar) -> UniPoly {
        let lin = UniPoly(alloc::vec![-r, Scalar::one()]);
        self.div_rem(&lin).0
    }
}

/// Distinct roots in ℚ(i) of a square-free polynomial, and the cofactor
/// left after removing them. Roots are searched by the rational root test
/// (rational coefficients) and the quadratic formula for a degree-two
/// remainder.
pub fn roots_in_field(p: &UniPoly) -> (Vec<Scalar>, UniPoly) {
    let mut rest = p.square_free();
    let mut roots = Vec::new();
    if rest.degree().unwrap_or(0) == 0 {
        return (roots, rest);
    }
    while rest.0.first().is_some_and(Scalar::is_zero) {
        roots.push(Scalar::zero());
        rest = UniPoly::new(rest.0[1..].to_vec());
    }
    if rest.0.iter().all(Scalar::is_real) && rest.degree().unwrap_or(0) > 2 {
        for r in rational_roots(&rest) {
            rest = rest.deflate(&r);
            roots.push(r);
        }
    }
    match rest.degree() {
        Some(1) => {
            let r = -&rest.0[0].div(&rest.0[1]).unwrap();
            roots.push(r);
            rest = UniPoly(alloc::vec![Scalar::one()]);
        }
        Some(2) => {
            let (c, b, a) = (&rest.0[0], &rest.0[1], &rest.0[2]);
            let disc = &(b * b) - &(&(a * c) * &Scalar::from_integer(4));
            if let Some(sq) = disc.sqrt() {
                let two_a = a * &Scalar::from_integer(2);
                let r1 = (&(-b) + &sq).div(&two_a).unwrap();
                let r2 = (&(-b) - &sq).div(&two_a).unwrap();
                roots.push(r1);
                roots.push(r2);
                rest = UniPoly(alloc::vec![Scalar::one()]);
            }
        }
        _ => {}
    }
    roots.sort();
    roots.dedup();
    (roots, rest)
}

fn rational_roots(p: &UniPoly) -> Vec<Scalar> {
    // Clear denominators to integer coefficients.
    let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.re.denom()));
    let ints: Vec<BigInt> = p.0.iter().map(|c| (c.re.numer() * &lcm) / c.re.denom()).collect();
    let (Some(a0), Some(an)) = (ints.first(), ints.last()) else {
        return Vec::new();
    };
    let (Some(a0), Some(an)) = (small_divisors(a0), small_divisors(an)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for pn in &a0 {
        for qd in &an {
            for sign in [1i64, -1] {
                let cand = Scalar::real(Rational::new(sign * *pn as i64, *qd as i64));
                if p.eval(&cand).is_zero() && !out.contains(&cand) {
                    out.push(cand);
                }
            }
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n == 0 || n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&x| Scalar::from_integer(x)).collect())
    }

    #[test]
    fn roots_of_lambda_squared_minus_lambda() {
        let (roots, rest) = roots_in_field(&up(&[0, -1, 1]));
        assert_eq!(roots, [Scalar::zero(), Scalar::one()]);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn gaussian_roots_from_quadratic() {
        // x^2 + 1
        let (roots, _) = roots_in_field(&up(&[1, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!(roots.contains(&Scalar::zeta()));
        // (x-2)^2 (x+3)(x^2+4) -> square-free part has roots 2, -3, ±2i
        let p = up(&[-2, 1]);
        let p = UniPoly::new(mul(&mul(&mul(&p.0, &p.0), &up(&[3, 1]).0), &up(&[4, 0, 1]).0));
        let (roots, rest) = roots_in_field(&p);
        assert_eq!(roots.len(), 4);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn irreducible_cubic_stays_undecided() {
        let (roots, rest) = roots_in_field(&up(&[-2, 0, 0, 1]));
        assert!(roots.is_empty());
        assert_eq!(rest.degree(), Some(3));
    }

    fn mul(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = alloc::vec![Scalar::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += &(x * y);
            }
        }
        out
    }
}
