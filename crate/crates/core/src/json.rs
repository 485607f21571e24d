//! JSON encodings.
//!
//! Quaternions are `[w, x, y, z]`: numbers for float coefficients, `"p/q"`
//! strings for rational ones. Reals are bare numbers (or a `"p/q"` string).
//! Matrices are `{"rows": n, "cols": m, "entries": [[...], ...]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::algebra::{Quaternion, Rational, Scalar};
use crate::biring::Matrix;
use crate::error::{Error, Result};

/// Scalars with a JSON encoding.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub fn rational_to_json(r: &Rational) -> Value {
    Value::String(format!("{}/{}", r.numer(), r.denom()))
}

pub fn rational_from_json(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else {
                // floats like 0.5 are taken at their exact binary value
                let f = n.as_f64().ok_or_else(|| invalid(format!("bad number {n}")))?;
                Rational::from_float(f).ok_or_else(|| invalid(format!("non-finite number {n}")))
            }
        }
        other => Err(invalid(format!("expected a rational, got {other}"))),
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p = BigInt::from_str(p.trim()).map_err(|_| invalid(format!("bad rational {s:?}")))?;
    let q = BigInt::from_str(q.trim()).map_err(|_| invalid(format!("bad rational {s:?}")))?;
    if q == BigInt::from(0) {
        return Err(invalid(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(p, q))
}

fn f64_from_json(v: &Value) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| invalid(format!("bad number {n}"))),
        Value::String(s) => {
            let r = parse_rational(s)?;
            Ok(crate::algebra::Coefficient::to_f64_lossy(&r))
        }
        other => Err(invalid(format!("expected a number, got {other}"))),
    }
}

impl JsonScalar for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        f64_from_json(v)
    }
}

impl JsonScalar for Rational {
    fn to_json(&self) -> Value {
        rational_to_json(self)
    }
    fn from_json(v: &Value) -> Result<Self> {
        rational_from_json(v)
    }
}

fn quaternion_from_json<T>(v: &Value, coeff: impl Fn(&Value) -> Result<T>) -> Result<Quaternion<T>>
where
    T: crate::algebra::Coefficient,
{
    match v {
        Value::Array(items) if items.len() == 4 => {
            Ok(Quaternion::new(coeff(&items[0])?, coeff(&items[1])?, coeff(&items[2])?, coeff(&items[3])?))
        }
        // a bare real
        Value::Number(_) | Value::String(_) => Ok(Quaternion::real(coeff(v)?)),
        other => Err(invalid(format!("expected a quaternion [w, x, y, z], got {other}"))),
    }
}

impl JsonScalar for Quaternion<f64> {
    fn to_json(&self) -> Value {
        json!([self.w, self.x, self.y, self.z])
    }
    fn from_json(v: &Value) -> Result<Self> {
        quaternion_from_json(v, f64_from_json)
    }
}

impl JsonScalar for Quaternion<Rational> {
    fn to_json(&self) -> Value {
        Value::Array(self.coefficients().into_iter().map(rational_to_json).collect())
    }
    fn from_json(v: &Value) -> Result<Self> {
        quaternion_from_json(v, rational_from_json)
    }
}

pub fn matrix_to_json<S: JsonScalar>(m: &Matrix<S>) -> Value {
    json!({
        "rows": m.rows(),
        "cols": m.cols(),
        "entries": m.row_vecs().map(|r| r.iter().map(S::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

/// Accepts the object form or a bare array of rows.
pub fn matrix_from_json<S: JsonScalar>(v: &Value) -> Result<Matrix<S>> {
    let (rows_v, declared) = match v {
        Value::Object(o) => {
            let entries = o.get("entries").ok_or_else(|| invalid("matrix object needs \"entries\""))?;
            let dim = |key: &str| -> Result<Option<usize>> {
                o.get(key)
                    .map(|d| {
                        d.as_u64().map(|d| d as usize).ok_or_else(|| invalid(format!("\"{key}\" must be a count")))
                    })
                    .transpose()
            };
            (entries, Some((dim("rows")?, dim("cols")?)))
        }
        Value::Array(_) => (v, None),
        other => return Err(invalid(format!("expected a matrix, got {other}"))),
    };
    let rows = rows_v.as_array().ok_or_else(|| invalid("\"entries\" must be an array of rows"))?;
    let parsed = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| invalid("matrix row must be an array"))?
                .iter()
                .map(S::from_json)
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let m = Matrix::from_rows(parsed)?;
    if let Some((r, c)) = declared {
        if r.is_some_and(|r| r != m.rows()) || c.is_some_and(|c| c != m.cols()) {
            return Err(invalid(format!("declared shape does not match {}x{} entries", m.rows(), m.cols())));
        }
    }
    Ok(m)
}

pub fn vector_to_json<S: JsonScalar>(v: &[S]) -> Value {
    Value::Array(v.iter().map(S::to_json).collect())
}

pub fn vector_from_json<S: JsonScalar>(v: &Value) -> Result<Vec<S>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("expected an array of scalars, got {v}")))?
        .iter()
        .map(S::from_json)
        .collect()
}
