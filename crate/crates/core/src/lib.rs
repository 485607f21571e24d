//! Matrix algebra over quaternions and other associative division algebras.
//!
//! * [`algebra`]: the scalar contract, quaternions over `f64` or exact rationals.
//! * [`biring`]: matrices with the rc and cr products, inverses, ranks, solving.
//! * [`quasidet`]: quasideterminants and their matrix.
//! * [`eigen`]: left/right eigenvalues under both products, pairs of matrices.
//! * [`ode`]: exponentials and closed-form solutions of `dx/dt = x ∘ a`.
//! * [`json`], [`gen`], [`selftest`]: encodings, seeded generators and the
//!   property suite used by the command-line tool.

pub mod algebra;
pub mod biring;
pub mod eigen;
pub mod error;
pub mod gen;
pub mod json;
pub mod ode;
pub mod quasidet;
pub mod selftest;

pub use algebra::{FloatQuaternion, Quaternion, Rational, RationalQuaternion, Scalar, Tol};
pub use biring::{Kind, Matrix, Orientation, Side};
pub use error::{Error, Result};
