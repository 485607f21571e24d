//! Scalars: the division-algebra contract and its concrete instances.
//!
//! Quaternions over exact rationals or `f64` are the working instance;
//! reals and complex numbers are the commutative reductions.

mod quaternion;
mod scalar;

pub use num_complex::Complex;
pub use quaternion::{FloatQuaternion, Quaternion, RationalQuaternion};
pub use scalar::{in_center, similar_witness, Coefficient, FloatScalar, Rational, Scalar, Tol, DEFAULT_EPS};
