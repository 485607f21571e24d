//! Exponentials and linear differential equations over a division algebra.
//!
//! The system is `dxⁱ/dt = Σ_k xᵏ a^i_k`, i.e. `dx/dt = x ∘ a` with the cr
//! product and `x` a column. Closed-form solutions:
//!
//! * right exponent `xⁱ = cⁱ e^{bt}`, valid when `c ∘ a = c·b` and either
//!   `b` commutes with every entry of `a` or `cⁱ = p·c'ⁱ` with every `c'ⁱ`
//!   commuting with `b`;
//! * left exponent `xⁱ = e^{bt} cⁱ`, valid when `c ∘ a = b·c`;
//! * for the scalar equation `dx/dt = a·x`, `x = c₁ e^{c₁⁻¹ a c₁ t} c₂`.

use crate::algebra::{in_center, FloatScalar, Scalar, Tol};
use crate::biring::{inverse, mul, mul3, Kind, Matrix};
use crate::error::{Error, Result};

/// Number of series terms in [`exp_series`].
pub const SERIES_TERMS: usize = 40;

/// Points of the residual grid on `[0, GRID_END]`.
pub const GRID_POINTS: usize = 21;
pub const GRID_END: f64 = 2.0;

/// `e^{at}` by scaling and squaring of a truncated Taylor series.
pub fn exp_series<S: FloatScalar>(a: &S, t: f64) -> S {
    let x = a.scale(t);
    let m = x.magnitude();
    let squarings = if m > 0.5 { (m / 0.5).log2().ceil() as i32 } else { 0 };
    let y = x.scale(0.5f64.powi(squarings));
    let mut r = S::one();
    for k in (1..=SERIES_TERMS).rev() {
        r = S::one() + (y.clone() * r).scale(1.0 / k as f64);
    }
    for _ in 0..squarings {
        r = r.clone() * r;
    }
    r
}

/// `e^{at}`, using the scalar's own exponential (closed form for quaternions).
pub fn exp_scalar<S: FloatScalar>(a: &S, t: f64) -> S {
    a.exp_t(t)
}

/// Residuals of the three forms of `c e^{c⁻¹ac t} = e^{at} c`:
/// `‖c e^{c⁻¹act} − e^{at} c‖`, `‖c e^{c⁻¹act} c⁻¹ − e^{at}‖` and
/// `‖e^{c⁻¹act} − c⁻¹ e^{at} c‖`.
pub fn conj_exp_residuals<S: FloatScalar>(a: &S, c: &S, t: f64) -> Result<[f64; 3]> {
    let c_inv = c.inv().ok_or(Error::ZeroScalar)?;
    let b = c_inv.clone() * a.clone() * c.clone();
    let eb = b.exp_t(t);
    let ea = a.exp_t(t);
    Ok([
        (c.clone() * eb.clone() - ea.clone() * c.clone()).magnitude(),
        (c.clone() * eb.clone() * c_inv.clone() - ea.clone()).magnitude(),
        (eb - c_inv * ea * c.clone()).magnitude(),
    ])
}

/// Terms `(c (c⁻¹ac)ⁿ, aⁿ c)` for `n = 0..=order`; the two entries agree
/// term by term.
pub fn series_terms<S: Scalar>(a: &S, c: &S, order: usize) -> Result<Vec<(S, S)>> {
    let c_inv = c.inv().ok_or(Error::ZeroScalar)?;
    let b = c_inv * a.clone() * c.clone();
    let mut out = Vec::with_capacity(order + 1);
    let (mut lhs, mut rhs) = (c.clone(), c.clone());
    for _ in 0..=order {
        out.push((lhs.clone(), rhs.clone()));
        lhs = lhs * b.clone();
        rhs = a.clone() * rhs;
    }
    Ok(out)
}

/// Truncated sums `Σ_{n≤N} c (c⁻¹ac)ⁿ tⁿ/n!` and `Σ_{n≤N} aⁿ c tⁿ/n!`
/// for a real `t` given as a scalar.
pub fn truncated_series<S: Scalar>(a: &S, c: &S, t: &S, order: usize) -> Result<(S, S)> {
    let mut lhs = S::zero();
    let mut rhs = S::zero();
    let mut weight = S::one(); // tⁿ/n!
    for (n, (l, r)) in series_terms(a, c, order)?.into_iter().enumerate() {
        if n > 0 {
            weight = weight * t.clone() * S::from_i64(n as i64).inv().expect("n > 0");
        }
        lhs = lhs + l * weight.clone();
        rhs = rhs + r * weight.clone();
    }
    Ok((lhs, rhs))
}

/// `e^{−at} c₁ e^{c₁⁻¹ac₁ t}`, constant in `t`.
pub fn c5<S: FloatScalar>(a: &S, c1: &S, t: f64) -> Result<S> {
    let c1_inv = c1.inv().ok_or(Error::ZeroScalar)?;
    let b = c1_inv * a.clone() * c1.clone();
    Ok(a.exp_t(-t) * c1.clone() * b.exp_t(t))
}

/// Coefficient matrix of `dx/dt = x ∘ a`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSystem<S> {
    pub a: Matrix<S>,
}

impl<S: Scalar> LinearSystem<S> {
    pub fn new(a: Matrix<S>) -> Result<Self> {
        a.require_square("linear system")?;
        Ok(LinearSystem { a })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// `(x ∘ a)ⁱ = Σ_k xᵏ a^i_k`.
    pub fn rhs(&self, x: &[S]) -> Vec<S> {
        (0..self.dim())
            .map(|i| x.iter().enumerate().fold(S::zero(), |acc, (k, xk)| acc + xk.clone() * self.a[(i, k)].clone()))
            .collect()
    }
}

/// `b` commutes with every entry of `a`.
pub fn center_condition<S: Scalar>(sys: &LinearSystem<S>, b: &S, tol: Tol) -> bool {
    sys.a.iter().all(|e| in_center(b, e, tol))
}

/// `cⁱ = p·c'ⁱ` for some `p ≠ 0` and `c'ⁱ` commuting with `b`; decided by
/// `(c^{i₀})⁻¹ cⁱ` commuting with `b` for the first nonzero `c^{i₀}`.
pub fn eigencolumn_center_condition<S: Scalar>(c: &[S], b: &S, tol: Tol) -> Result<bool> {
    let scale = c.iter().map(S::magnitude).fold(0.0, f64::max);
    let lead = c.iter().find(|x| !x.is_negligible(tol, scale)).ok_or(Error::ZeroVector)?;
    let lead_inv = lead.inv().expect("nonzero");
    Ok(c.iter().all(|x| in_center(&(lead_inv.clone() * x.clone()), b, tol)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolutionForm {
    /// `xⁱ = cⁱ e^{bt}`
    RightExp,
    /// `xⁱ = e^{bt} cⁱ`
    LeftExp,
    /// `x = c₁ e^{bt} c₂` with `b = c₁⁻¹ a c₁`, for `dx/dt = a·x`
    Scalar,
}

impl SolutionForm {
    pub fn as_str(self) -> &'static str {
        match self {
            SolutionForm::RightExp => "right_exp",
            SolutionForm::LeftExp => "left_exp",
            SolutionForm::Scalar => "scalar",
        }
    }
}

/// Closed-form solution with an analytic derivative.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormSolution<S> {
    RightExp { b: S, c: Vec<S> },
    LeftExp { b: S, c: Vec<S> },
    Scalar { b: S, c1: S, c2: S },
}

impl<S: FloatScalar> ClosedFormSolution<S> {
    /// Solution of `dx/dt = a·x` with `x(0) = c₁c₂`.
    pub fn scalar(a: &S, c1: S, c2: S) -> Result<Self> {
        let c1_inv = c1.inv().ok_or(Error::ZeroScalar)?;
        Ok(ClosedFormSolution::Scalar { b: c1_inv * a.clone() * c1.clone(), c1, c2 })
    }

    pub fn form(&self) -> SolutionForm {
        match self {
            ClosedFormSolution::RightExp { .. } => SolutionForm::RightExp,
            ClosedFormSolution::LeftExp { .. } => SolutionForm::LeftExp,
            ClosedFormSolution::Scalar { .. } => SolutionForm::Scalar,
        }
    }

    pub fn b(&self) -> &S {
        match self {
            ClosedFormSolution::RightExp { b, .. }
            | ClosedFormSolution::LeftExp { b, .. }
            | ClosedFormSolution::Scalar { b, .. } => b,
        }
    }

    /// `x(t)`; a single entry for the scalar form.
    pub fn eval(&self, t: f64) -> Vec<S> {
        let e = self.b().exp_t(t);
        match self {
            ClosedFormSolution::RightExp { c, .. } => c.iter().map(|ci| ci.clone() * e.clone()).collect(),
            ClosedFormSolution::LeftExp { c, .. } => c.iter().map(|ci| e.clone() * ci.clone()).collect(),
            ClosedFormSolution::Scalar { c1, c2, .. } => vec![c1.clone() * e * c2.clone()],
        }
    }

    /// `x'(t)`, from `d/dt e^{bt} = b e^{bt} = e^{bt} b`.
    pub fn derivative(&self, t: f64) -> Vec<S> {
        let b = self.b().clone();
        let e = b.exp_t(t);
        match self {
            ClosedFormSolution::RightExp { c, .. } => c.iter().map(|ci| ci.clone() * e.clone() * b.clone()).collect(),
            ClosedFormSolution::LeftExp { c, .. } => c.iter().map(|ci| b.clone() * e.clone() * ci.clone()).collect(),
            ClosedFormSolution::Scalar { c1, c2, .. } => vec![c1.clone() * b * e * c2.clone()],
        }
    }

    /// `‖x'(t) − x(t) ∘ a‖` for the system forms.
    pub fn residual(&self, sys: &LinearSystem<S>, t: f64) -> Result<f64> {
        let x = self.eval(t);
        if x.len() != sys.dim() {
            return Err(Error::Shape {
                op: "residual",
                left: sys.a.shape(),
                right: (x.len(), 1),
                kind: Some(Kind::Cr),
            });
        }
        Ok(max_diff(&self.derivative(t), &sys.rhs(&x)))
    }

    /// `‖x'(t) − a·x(t)‖` for the scalar form.
    pub fn scalar_residual(&self, a: &S, t: f64) -> f64 {
        let x = self.eval(t);
        let d = self.derivative(t);
        (d[0].clone() - a.clone() * x[0].clone()).magnitude()
    }

    /// Largest [`residual`](Self::residual) on the grid.
    pub fn grid_residual(&self, sys: &LinearSystem<S>) -> Result<f64> {
        grid().try_fold(0.0f64, |m, t| Ok(m.max(self.residual(sys, t)?)))
    }
}

fn max_diff<S: Scalar>(a: &[S], b: &[S]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x.clone() - y.clone()).magnitude()).fold(0.0, f64::max)
}

/// `GRID_POINTS` equispaced times on `[0, GRID_END]`.
pub fn grid() -> impl Iterator<Item = f64> {
    (0..GRID_POINTS).map(|k| GRID_END * k as f64 / (GRID_POINTS - 1) as f64)
}

/// Largest accepted grid residual of [`build_solution`].
pub const RESIDUAL_BOUND: f64 = 1e-8;

/// Candidate solution without any precondition check.
pub fn naive_solution<S: FloatScalar>(b: S, c: Vec<S>, form: SolutionForm) -> Result<ClosedFormSolution<S>> {
    match form {
        SolutionForm::RightExp => Ok(ClosedFormSolution::RightExp { b, c }),
        SolutionForm::LeftExp => Ok(ClosedFormSolution::LeftExp { b, c }),
        SolutionForm::Scalar => Err(Error::Invalid("the scalar form solves dx/dt = a·x, not a system".into())),
    }
}

/// Closed-form solution of `dx/dt = x ∘ a` from an eigen datum.
///
/// Right exponent: requires `c ∘ a = c·b` and then the center condition or
/// the eigencolumn condition. Left exponent: requires `c ∘ a = b·c`.
pub fn build_solution<S: FloatScalar>(
    sys: &LinearSystem<S>,
    b: &S,
    c: &[S],
    form: SolutionForm,
    tol: Tol,
) -> Result<ClosedFormSolution<S>> {
    let n = sys.dim();
    if c.len() != n {
        return Err(Error::Shape {
            op: "build_solution",
            left: sys.a.shape(),
            right: (c.len(), 1),
            kind: Some(Kind::Cr),
        });
    }
    if c.iter().all(S::is_zero) {
        return Err(Error::ZeroVector);
    }
    let col = Matrix::column_vector(c.to_vec());
    let lhs = mul(&col, &sys.a, Kind::Cr)?;
    let cv = col.max_magnitude();
    let scale = 1.0 + n as f64 * sys.a.max_magnitude() * cv + b.magnitude() * cv;
    match form {
        SolutionForm::RightExp => {
            if !lhs.close_to(&col.scale_right(b), tol, scale) {
                return Err(Error::RejectedSolution("c ∘ a ≠ c·b: (b, c) is not an eigen datum".into()));
            }
            if !center_condition(sys, b, tol) && !eigencolumn_center_condition(c, b, tol)? {
                return Err(Error::RejectedSolution(
                    "b does not commute with every entry of a and c is not p·c' with every c' commuting with b".into(),
                ));
            }
        }
        SolutionForm::LeftExp => {
            if !lhs.close_to(&col.scale_left(b), tol, scale) {
                return Err(Error::RejectedSolution("c ∘ a ≠ b·c: c is not a left cr eigencolumn for b".into()));
            }
        }
        SolutionForm::Scalar => {
            return Err(Error::Invalid("the scalar form solves dx/dt = a·x, not a system".into()));
        }
    }
    let sol = naive_solution(b.clone(), c.to_vec(), form)?;
    let r = sol.grid_residual(sys)?;
    if r > RESIDUAL_BOUND * (1.0 + scale) {
        return Err(Error::RejectedSolution(format!("grid residual {r:e} exceeds the bound")));
    }
    Ok(sol)
}

/// Solution in a new basis: `t ↦ x₁(t) ∘ m` with `x₁` a closed form and
/// `m` the accumulated inverse basis changes.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedSolution<S> {
    pub base: ClosedFormSolution<S>,
    pub post: Matrix<S>,
}

impl<S: FloatScalar> TransformedSolution<S> {
    /// Applies one more passive transformation `f`.
    pub fn transform(&self, f: &Matrix<S>, tol: Tol) -> Result<Self> {
        let f_inv = inverse(f, Kind::Cr, tol)?;
        Ok(TransformedSolution { base: self.base.clone(), post: mul(&self.post, &f_inv, Kind::Cr)? })
    }

    fn apply(&self, x: Vec<S>) -> Vec<S> {
        mul(&Matrix::column_vector(x), &self.post, Kind::Cr).expect("shape checked").into_vec()
    }

    pub fn eval(&self, t: f64) -> Vec<S> {
        self.apply(self.base.eval(t))
    }

    pub fn derivative(&self, t: f64) -> Vec<S> {
        self.apply(self.base.derivative(t))
    }

    pub fn residual(&self, sys: &LinearSystem<S>, t: f64) -> f64 {
        max_diff(&self.derivative(t), &sys.rhs(&self.eval(t)))
    }

    pub fn grid_residual(&self, sys: &LinearSystem<S>) -> f64 {
        grid().map(|t| self.residual(sys, t)).fold(0.0, f64::max)
    }
}

/// `x = (c∘f) e^{bt} ∘ f⁻¹`: the right-exponent solution `x₁ = c₁ e^{bt}`
/// seen in the basis `ē = f ∘ ē₁`. Solves `dx/dt = x ∘ a` with `a` from
/// [`transformed_system`].
pub fn transform_solution<S: FloatScalar>(
    sol: &ClosedFormSolution<S>,
    f: &Matrix<S>,
    tol: Tol,
) -> Result<TransformedSolution<S>> {
    let ClosedFormSolution::RightExp { c, .. } = sol else {
        return Err(Error::Invalid("basis change applies to right exponent solutions".into()));
    };
    if f.shape() != (c.len(), c.len()) {
        return Err(Error::Shape {
            op: "transform_solution",
            left: (c.len(), 1),
            right: f.shape(),
            kind: Some(Kind::Cr),
        });
    }
    TransformedSolution { base: sol.clone(), post: Matrix::identity(c.len()) }.transform(f, tol)
}

/// `f ∘ a ∘ f⁻¹` (cr): the system seen in the basis `ē = f ∘ ē₁`.
pub fn transformed_system<S: Scalar>(sys: &LinearSystem<S>, f: &Matrix<S>, tol: Tol) -> Result<LinearSystem<S>> {
    let f_inv = inverse(f, Kind::Cr, tol)?;
    LinearSystem::new(mul3(f, &sys.a, &f_inv, Kind::Cr)?)
}

/// Fixed-step trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory<S> {
    pub times: Vec<f64>,
    pub states: Vec<Vec<S>>,
}

impl<S> Trajectory<S> {
    pub fn last(&self) -> &[S] {
        self.states.last().expect("trajectory has the initial state")
    }
}

fn rk4<S: FloatScalar>(x0: Vec<S>, t_end: f64, h: f64, f: impl Fn(&[S]) -> Vec<S>) -> Result<Trajectory<S>> {
    if !h.is_finite() || h <= 0.0 {
        return Err(Error::Invalid(format!("step must be positive, got {h}")));
    }
    if !t_end.is_finite() || t_end < 0.0 {
        return Err(Error::Invalid(format!("end time must be non-negative, got {t_end}")));
    }
    let axpy = |x: &[S], k: &[S], s: f64| -> Vec<S> { x.iter().zip(k).map(|(a, b)| a.clone() + b.scale(s)).collect() };
    let steps = (t_end / h - 1e-9).ceil().max(0.0) as usize;
    let mut times = vec![0.0];
    let mut states = vec![x0];
    let mut t = 0.0;
    for s in 0..steps {
        let step = if s + 1 == steps { t_end - t } else { h };
        let x = states.last().expect("nonempty");
        let k1 = f(x);
        let k2 = f(&axpy(x, &k1, step / 2.0));
        let k3 = f(&axpy(x, &k2, step / 2.0));
        let k4 = f(&axpy(x, &k3, step));
        let next = (0..x.len())
            .map(|i| {
                let incr = k1[i].clone() + k2[i].scale(2.0) + k3[i].scale(2.0) + k4[i].clone();
                x[i].clone() + incr.scale(step / 6.0)
            })
            .collect();
        t = if s + 1 == steps { t_end } else { t + step };
        times.push(t);
        states.push(next);
    }
    Ok(Trajectory { times, states })
}

/// Classical RK4 for `dx/dt = x ∘ a`.
pub fn rk4_system<S: FloatScalar>(sys: &LinearSystem<S>, x0: &[S], t_end: f64, h: f64) -> Result<Trajectory<S>> {
    if x0.len() != sys.dim() {
        return Err(Error::Shape { op: "rk4", left: sys.a.shape(), right: (x0.len(), 1), kind: Some(Kind::Cr) });
    }
    rk4(x0.to_vec(), t_end, h, |x| sys.rhs(x))
}

/// Classical RK4 for `dx/dt = a·x`.
pub fn rk4_scalar<S: FloatScalar>(a: &S, x0: &S, t_end: f64, h: f64) -> Result<Trajectory<S>> {
    rk4(vec![x0.clone()], t_end, h, |x| vec![a.clone() * x[0].clone()])
}
