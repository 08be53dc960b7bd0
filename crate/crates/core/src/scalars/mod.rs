//! Exact scalars: rationals, Gaussian rationals and multivariate
//! polynomials in named parameters.

mod gaussian;
mod poly;
mod rational;
pub mod univariate;

use core::fmt::Debug;

pub use gaussian::GaussianRational;
pub use poly::{Assignment, Monomial, Poly};
pub use rational::Rational;

/// The scalar field of every algebra in this crate.
pub type Scalar = GaussianRational;

/// Ring operations shared by constant scalars and parametric polynomials,
/// so that vectors and maps can carry either.
pub trait Coeff: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn from_scalar(c: Scalar) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
    fn negate(&self) -> Self;

    fn sub_assign_ref(&mut self, rhs: &Self) {
        self.add_assign_ref(&rhs.negate());
    }
}

impl Coeff for Scalar {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn from_scalar(c: Scalar) -> Self {
        c
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Scalar) -> Self {
        self * c
    }
    fn negate(&self) -> Self {
        -self
    }
}

impl Coeff for Poly {
    fn zero() -> Self {
        Poly::zero()
    }
    fn is_zero(&self) -> bool {
        Poly::is_zero(self)
    }
    fn from_scalar(c: Scalar) -> Self {
        Poly::constant(c)
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        Poly::add_assign(self, rhs);
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul(rhs)
    }
    fn scale(&self, c: &Scalar) -> Self {
        Poly::scale(self, c)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
}
