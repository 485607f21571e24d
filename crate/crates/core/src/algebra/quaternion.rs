use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Coefficient, FloatScalar, Rational, Scalar, Tol};

/// Quaternion `w + x·i + y·j + z·k` over a coefficient field.
///
/// `i² = j² = k² = −1`, `ij = k`, `jk = i`, `ki = j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

pub type RationalQuaternion = Quaternion<Rational>;
pub type FloatQuaternion = Quaternion<f64>;

impl<T: Coefficient> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn real(w: T) -> Self {
        Quaternion::new(w, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Quaternion::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Quaternion::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    pub fn from_ints(w: i64, x: i64, y: i64, z: i64) -> Self {
        let c = |n: i64| T::from_i64(n).expect("integer fits the coefficient field");
        Quaternion::new(c(w), c(x), c(y), c(z))
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -self.x.clone(), -self.y.clone(), -self.z.clone())
    }

    pub fn norm_sqr(&self) -> T {
        self.w.clone() * self.w.clone()
            + self.x.clone() * self.x.clone()
            + self.y.clone() * self.y.clone()
            + self.z.clone() * self.z.clone()
    }

    /// Squared length of the imaginary part.
    pub fn imag_norm_sqr(&self) -> T {
        self.x.clone() * self.x.clone() + self.y.clone() * self.y.clone() + self.z.clone() * self.z.clone()
    }

    /// Imaginary part as a pure quaternion.
    pub fn imag(&self) -> Self {
        Quaternion::new(T::zero(), self.x.clone(), self.y.clone(), self.z.clone())
    }

    pub fn scale_by(&self, r: &T) -> Self {
        Quaternion::new(
            self.w.clone() * r.clone(),
            self.x.clone() * r.clone(),
            self.y.clone() * r.clone(),
            self.z.clone() * r.clone(),
        )
    }

    pub fn coefficients(&self) -> [&T; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }

    /// A nonzero pure quaternion orthogonal to the imaginary part of `self`.
    fn orthogonal_pure(&self) -> Self {
        if self.x.is_zero() && self.y.is_zero() {
            Quaternion::i()
        } else {
            Quaternion::new(T::zero(), -self.y.clone(), self.x.clone(), T::zero())
        }
    }
}

impl<T: Coefficient> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Quaternion::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Coefficient> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Quaternion::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Coefficient> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Coefficient> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let [w, x, y, z] = T::quaternion_product(self.coefficients(), o.coefficients());
        Quaternion::new(w, x, y, z)
    }
}

impl<T: Coefficient> Scalar for Quaternion<T> {
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Quaternion::real(T::zero())
    }

    fn one() -> Self {
        Quaternion::real(T::one())
    }

    fn from_i64(n: i64) -> Self {
        Quaternion::real(T::from_i64(n).expect("integer fits the coefficient field"))
    }

    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        let c = self.conj();
        Some(Quaternion::new(c.w / n.clone(), c.x / n.clone(), c.y / n.clone(), c.z / n))
    }

    fn magnitude(&self) -> f64 {
        self.norm_sqr().to_f64_lossy().sqrt()
    }

    fn is_real(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    /// Quaternions are similar iff real parts and norms agree. With
    /// `u = Im a`, `v = Im b` of equal length `r`, the element
    /// `c = r² − v·u` satisfies `v·c = c·u`; it vanishes only for `u = −v`,
    /// where any pure quaternion orthogonal to `v` anticommutes with `v`.
    fn similar_witness(&self, other: &Self, tol: Tol) -> Option<Self> {
        let scale = 1.0 + self.norm_sqr().to_f64_lossy().max(other.norm_sqr().to_f64_lossy());
        let same_real = self.w.near(&other.w, tol, scale.sqrt());
        let same_norm = self.norm_sqr().near(&other.norm_sqr(), tol, scale);
        if !(same_real && same_norm) {
            return None;
        }
        if Scalar::close_to(self, other, tol, scale.sqrt()) {
            return Some(Self::one());
        }
        let u = self.imag();
        let v = other.imag();
        let r2 = v.imag_norm_sqr();
        if r2.near(&T::zero(), tol, scale) {
            return Some(Self::one());
        }
        let c = Quaternion::real(r2) - v.clone() * u;
        if Scalar::is_negligible(&c, tol, scale) {
            Some(v.orthogonal_pure())
        } else {
            Some(c)
        }
    }
}

impl FloatScalar for Quaternion<f64> {
    fn scale(&self, r: f64) -> Self {
        self.scale_by(&r)
    }

    /// `e^{wt}(cos(‖v‖t) + v/‖v‖·sin(‖v‖t))` for `self = w + v`.
    fn exp_t(&self, t: f64) -> Self {
        let r = self.imag_norm_sqr().sqrt();
        let ew = (self.w * t).exp();
        if r == 0.0 {
            return Quaternion::real(ew);
        }
        let s = ew * (r * t).sin() / r;
        Quaternion::new(ew * (r * t).cos(), self.x * s, self.y * s, self.z * s)
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for Quaternion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}i + {}j + {}k", self.w, self.x, self.y, self.z)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = RationalQuaternion;

    #[test]
    fn multiplication_table() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        let m1 = -Q::one();
        assert_eq!(i.clone() * i.clone(), m1);
        assert_eq!(j.clone() * j.clone(), m1);
        assert_eq!(k.clone() * k.clone(), m1);
        assert_eq!(i.clone() * j.clone(), k);
        assert_eq!(j.clone() * k.clone(), i);
        assert_eq!(k.clone() * i.clone(), j);
        assert_eq!(j * i, -k);
    }

    #[test]
    fn inverse_of_i_is_minus_i() {
        assert_eq!(Q::i().inv().unwrap(), -Q::i());
        assert!(Q::zero().inv().is_none());
    }

    #[test]
    fn center_examples() {
        let tol = Tol::default();
        let b = Q::from_ints(2, -1, 3, 5);
        assert!(super::super::in_center(&Q::one(), &b, tol));
        assert!(!super::super::in_center(&Q::j(), &Q::i(), tol));
        assert!(super::super::in_center(&Q::from_ints(3, 2, 0, 0), &Q::i(), tol));
    }

    fn check_witness(a: &Q, b: &Q) {
        let c = a.similar_witness(b, Tol::default()).expect("similar");
        assert!(!Scalar::is_zero(&c));
        assert_eq!(c.inv().unwrap() * b.clone() * c, *a);
    }

    #[test]
    fn similar_witness_examples() {
        let b = Q::from_ints(1, 2, -2, 1);
        assert_eq!(b.similar_witness(&b, Tol::default()), Some(Q::one()));
        check_witness(&Q::i(), &Q::j());
        check_witness(&Q::i(), &-Q::i());
        check_witness(&Q::k(), &-Q::k());
        check_witness(&Q::from_ints(1, 0, 3, 4), &Q::from_ints(1, 5, 0, 0));
        assert_eq!(Q::i().similar_witness(&Q::from_ints(0, 2, 0, 0), Tol::default()), None);
        assert_eq!(Q::i().similar_witness(&Q::from_ints(1, 1, 0, 0), Tol::default()), None);
    }

    #[test]
    fn float_witness_for_opposite_axes() {
        let a = FloatQuaternion::new(0.5, 0.0, 0.6, 0.8);
        let b = FloatQuaternion::new(0.5, 0.0, -0.6, -0.8);
        let c = a.similar_witness(&b, Tol::default()).unwrap();
        let back = c.inv().unwrap() * b * c;
        assert!((back - a).magnitude() < 1e-12);
    }

    #[test]
    fn closed_form_exponential_hits_minus_one() {
        let e = FloatQuaternion::i().exp_t(std::f64::consts::PI);
        assert!((e + FloatQuaternion::one()).magnitude() < 1e-15);
        let e = FloatQuaternion::j().exp_t(std::f64::consts::FRAC_PI_2);
        assert!((e - FloatQuaternion::j()).magnitude() < 1e-15);
    }
}
