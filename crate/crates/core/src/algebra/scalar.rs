use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, ToPrimitive, Zero};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;

/// Default relative tolerance for float-mode equality decisions.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Relative tolerance used by every float-mode zero or equality decision.
///
/// Exact scalars ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tol {
    pub eps: f64,
}

impl Tol {
    pub const fn new(eps: f64) -> Self {
        Tol { eps }
    }

    /// `true` when a quantity of size `value` is negligible next to `scale`.
    pub fn negligible(self, value: f64, scale: f64) -> bool {
        value <= self.eps * scale
    }
}

impl Default for Tol {
    fn default() -> Self {
        Tol { eps: DEFAULT_EPS }
    }
}

/// Element of an associative division algebra.
///
/// Implementations must satisfy associativity, both distributive laws and
/// two-sided inverses for every nonzero element. Exact implementations
/// (`EXACT = true`) use structural equality for every decision; float
/// implementations go through [`Tol`].
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    /// Exact test against the additive identity.
    fn is_zero(&self) -> bool;

    /// Two-sided multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// Non-negative size used for pivoting and tolerance decisions.
    fn magnitude(&self) -> f64;

    /// `true` when the element lies in the real line, i.e. commutes with everything.
    fn is_real(&self) -> bool;

    /// Some `c != 0` with `self = c⁻¹·other·c`, or `None` when the two are not similar.
    fn similar_witness(&self, other: &Self, tol: Tol) -> Option<Self>;

    /// Zero under the mode's equality, relative to `scale`.
    fn is_negligible(&self, tol: Tol, scale: f64) -> bool {
        if Self::EXACT {
            self.is_zero()
        } else {
            tol.negligible(self.magnitude(), scale)
        }
    }

    /// Equality under the mode: structural when exact, `‖a − b‖ ≤ ε·scale` otherwise.
    fn close_to(&self, other: &Self, tol: Tol, scale: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            tol.negligible((self.clone() - other.clone()).magnitude(), scale)
        }
    }
}

/// Scalars with binary floating point coefficients; these support the
/// transcendental functions used by the ODE module.
pub trait FloatScalar: Scalar {
    /// Multiply by a real number.
    fn scale(&self, r: f64) -> Self;

    /// `e^{self·t}`. Defaults to the scaling-and-squaring series.
    fn exp_t(&self, t: f64) -> Self {
        crate::ode::exp_series(self, t)
    }
}

/// Coefficient field of the concrete algebras: `f64` or [`Rational`].
pub trait Coefficient:
    Clone + Debug + PartialEq + Send + Sync + 'static + Num + Neg<Output = Self> + ToPrimitive + FromPrimitive
{
    const EXACT: bool;

    /// Coefficients of the quaternion product `a·b`, each as `(w, x, y, z)`.
    fn quaternion_product(a: [&Self; 4], b: [&Self; 4]) -> [Self; 4] {
        let m = |i: usize, j: usize| a[i].clone() * b[j].clone();
        [
            m(0, 0) - m(1, 1) - m(2, 2) - m(3, 3),
            m(0, 1) + m(1, 0) + m(2, 3) - m(3, 2),
            m(0, 2) - m(1, 3) + m(2, 0) + m(3, 1),
            m(0, 3) + m(1, 2) - m(2, 1) + m(3, 0),
        ]
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Equality under the mode, as in [`Scalar::close_to`].
    fn near(&self, other: &Self, tol: Tol, scale: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            tol.negligible((self.clone() - other.clone()).to_f64_lossy().abs(), scale)
        }
    }
}

impl Coefficient for f64 {
    const EXACT: bool = false;
}

impl Coefficient for Rational {
    const EXACT: bool = true;

    // Integer numerators over one common denominator per factor, reduced once
    // per component. Much cheaper than sixteen reduced rational products.
    fn quaternion_product(a: [&Self; 4], b: [&Self; 4]) -> [Self; 4] {
        fn scaled(q: [&Rational; 4]) -> ([BigInt; 4], BigInt) {
            let den = q.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
            (q.map(|r| r.numer() * (&den / r.denom())), den)
        }
        let (p, dp) = scaled(a);
        let (q, dq) = scaled(b);
        let m = |i: usize, j: usize| &p[i] * &q[j];
        let den = dp * dq;
        [
            m(0, 0) - m(1, 1) - m(2, 2) - m(3, 3),
            m(0, 1) + m(1, 0) + m(2, 3) - m(3, 2),
            m(0, 2) - m(1, 3) + m(2, 0) + m(3, 1),
            m(0, 3) + m(1, 2) - m(2, 1) + m(3, 0),
        ]
        .map(|n| Rational::new(n, den.clone()))
    }
}

macro_rules! real_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = <$t as Coefficient>::EXACT;

            fn zero() -> Self {
                <$t as Zero>::zero()
            }
            fn one() -> Self {
                <$t as One>::one()
            }
            fn from_i64(n: i64) -> Self {
                <$t as FromPrimitive>::from_i64(n).expect("integer fits the coefficient field")
            }
            fn is_zero(&self) -> bool {
                Zero::is_zero(self)
            }
            fn inv(&self) -> Option<Self> {
                if Zero::is_zero(self) {
                    None
                } else {
                    Some(<$t as One>::one() / self.clone())
                }
            }
            fn magnitude(&self) -> f64 {
                self.to_f64_lossy().abs()
            }
            fn is_real(&self) -> bool {
                true
            }
            fn similar_witness(&self, other: &Self, tol: Tol) -> Option<Self> {
                let scale = 1.0 + self.magnitude().max(other.magnitude());
                self.close_to(other, tol, scale).then(<$t as One>::one)
            }
        }
    };
}

real_scalar!(f64);
real_scalar!(Rational);

impl FloatScalar for f64 {
    fn scale(&self, r: f64) -> Self {
        self * r
    }

    fn exp_t(&self, t: f64) -> Self {
        (self * t).exp()
    }
}

impl<T: Coefficient> Scalar for Complex<T> {
    const EXACT: bool = T::EXACT;

    fn zero() -> Self {
        Complex::new(T::zero(), T::zero())
    }
    fn one() -> Self {
        Complex::new(T::one(), T::zero())
    }
    fn from_i64(n: i64) -> Self {
        Complex::new(T::from_i64(n).expect("integer fits the coefficient field"), T::zero())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn inv(&self) -> Option<Self> {
        if Scalar::is_zero(self) {
            return None;
        }
        let n = self.norm_sqr();
        Some(Complex::new(self.re.clone() / n.clone(), -self.im.clone() / n))
    }
    fn magnitude(&self) -> f64 {
        self.norm_sqr().to_f64_lossy().sqrt()
    }
    fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    fn similar_witness(&self, other: &Self, tol: Tol) -> Option<Self> {
        let scale = 1.0 + self.magnitude().max(other.magnitude());
        self.close_to(other, tol, scale).then(<Self as Scalar>::one)
    }
}

impl FloatScalar for Complex<f64> {
    fn scale(&self, r: f64) -> Self {
        self * r
    }

    fn exp_t(&self, t: f64) -> Self {
        (self * t).exp()
    }
}

/// `c·b = b·c` under the mode's equality: exact in rational mode,
/// `‖cb − bc‖ ≤ ε·(1 + ‖b‖‖c‖)` in float mode.
pub fn in_center<S: Scalar>(c: &S, b: &S, tol: Tol) -> bool {
    let cb = c.clone() * b.clone();
    let bc = b.clone() * c.clone();
    cb.close_to(&bc, tol, 1.0 + b.magnitude() * c.magnitude())
}

/// Witness `c ≠ 0` with `a = c⁻¹·b·c`, if the two are similar.
pub fn similar_witness<S: Scalar>(a: &S, b: &S, tol: Tol) -> Option<S> {
    a.similar_witness(b, tol)
}
