//! Exact-arithmetic Lie superalgebras given by structure constants.
//!
//! The crate builds the classical matrix superalgebras (gl, sl, psl, P, Q,
//! osp) and the Cartan-type algebras W, S, S̃ and H over the exterior
//! algebra, implements the standard automorphism generators as
//! parametrized even maps, and decides whether a superalgebra admits a
//! Hom-Lie structure other than the identity twist.
//!
//! Everything here is `no_std` and only needs `alloc`; file formats and the
//! command-line driver live in the `superhom` crate.
#![no_std]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod automorphisms;
pub mod cartan_families;
pub mod catalog;
mod error;
pub mod homsolver;
pub mod matrix_families;
pub mod scalars;
pub mod superalgebra;
pub mod superlinear;

pub use catalog::{AlgebraSpec, BuiltAlgebra};
pub use error::{Error, Result};
pub use scalars::{Coeff, GaussianRational, Poly, Rational, Scalar};
pub use superalgebra::SuperAlgebra;
pub use superlinear::{LinearMap, Parity, SparseVec, SuperSpace, Vector};
