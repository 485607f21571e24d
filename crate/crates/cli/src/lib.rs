//! Command implementations behind the `biring` binary.
//!
//! Every command reads one JSON document and writes one JSON document.
//! Exit status: 0 on success, 1 on malformed input, 2 on domain errors
//! (singular matrices, rejected solutions, failed self-test).

use std::path::PathBuf;

use biring::algebra::{FloatQuaternion, FloatScalar, RationalQuaternion, Tol, DEFAULT_EPS};
use biring::biring::{inverse, mul, power, rank, Kind, Matrix, Side};
use biring::eigen::{self, DiagonalizeError, EigenPair};
use biring::json::{matrix_from_json, matrix_to_json, vector_from_json, vector_to_json, JsonScalar};
use biring::ode::{self, LinearSystem, SolutionForm};
use biring::quasidet::{quasidet, quasidet_matrix, QuasidetIndex};
use biring::{selftest, Error};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Rational,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Rc,
    Cr,
}

impl From<KindArg> for Kind {
    fn from(k: KindArg) -> Kind {
        match k {
            KindArg::Rc => Kind::Rc,
            KindArg::Cr => Kind::Cr,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// {"a": M, "b": M} → product under --kind
    Mul,
    /// {"a": M, "k": n}
    Power,
    /// {"a": M}
    Invert,
    /// {"a": M}
    Rank,
    /// {"a": M, "i"?: n, "j"?: n}, 1-based; all entries when i, j are absent
    Quasidet,
    /// {"a": M, "pair": {"value", "vector", "side", "kind"?}}
    EigVerify,
    /// {"a": M, "u": M, "side"}
    Diagonalize,
    /// {"u": M, "d": [s], "side"}
    Spectrum,
    /// {"pair": {...}, "c": s, "a"?: M}
    Conjugate,
    /// {"a": M, "b": s, "c": [s], "form": "right_exp" | "left_exp"}
    OdeSolve,
    /// ode-solve input plus "t_end"? (1), "h"? (0.001)
    OdeCheck,
    /// {"a": s, "c": s, "t": x}
    ExpIdentity,
    /// Runs the built-in property suite; input is ignored
    Selftest {
        /// Instances per check
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

/// Matrix algebra over quaternions with JSON input and output.
#[derive(Debug, Clone, Parser)]
#[command(name = "biring", version)]
pub struct CommandRequest {
    #[command(subcommand)]
    pub command: Command,
    /// Coefficient field of the quaternions
    #[arg(long, value_enum, global = true, default_value_t = Mode::Rational)]
    pub mode: Mode,
    /// Matrix product
    #[arg(long, value_enum, global = true, default_value_t = KindArg::Rc)]
    pub kind: KindArg,
    /// Seed for generated instances
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Relative tolerance in float mode
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    pub tol: f64,
    /// Input JSON file (standard input when neither this nor --json is given)
    #[arg(long, global = true, conflicts_with = "json")]
    pub input: Option<PathBuf>,
    /// Inline input JSON
    #[arg(long, global = true)]
    pub json: Option<String>,
}

impl CommandRequest {
    pub fn needs_input(&self) -> bool {
        !matches!(self.command, Command::Selftest { .. })
    }
}

/// Exit status and output document.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub body: Value,
}

impl Outcome {
    fn ok(body: Value) -> Self {
        Outcome { code: 0, body }
    }

    pub fn render(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("json values serialize")
    }
}

enum Failure {
    Malformed(String),
    Domain(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let message = e.to_string();
        let body = match &e {
            Error::Shape { .. } | Error::NotSquare { .. } | Error::Invalid(_) => return Failure::Malformed(message),
            Error::Singular { rank, n } => json!({"error": "singular", "rank": rank, "n": n}),
            Error::NoSolution => json!({"error": "no_solution"}),
            Error::UndefinedQuasideterminant { i, j } => {
                json!({"error": "undefined_quasideterminant", "i": i + 1, "j": j + 1})
            }
            Error::ZeroScalar => json!({"error": "zero_scalar"}),
            Error::ZeroVector => json!({"error": "zero_vector"}),
            Error::RejectedSolution(reason) => json!({"error": "rejected_solution", "reason": reason}),
            Error::UnsupportedMode => json!({"error": "unsupported_mode"}),
        };
        let mut body = body;
        body["message"] = Value::String(message);
        Failure::Domain(body)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn malformed(msg: impl Into<String>) -> Failure {
    Failure::Malformed(msg.into())
}

/// Runs a request on an already parsed input document.
pub fn run(req: &CommandRequest, input: &Value) -> Outcome {
    let result = match req.mode {
        Mode::Rational => dispatch::<RationalQuaternion>(req, input, None),
        Mode::Float => dispatch::<FloatQuaternion>(req, input, Some(float_ops())),
    };
    match result {
        Ok(o) => o,
        Err(Failure::Malformed(m)) => Outcome { code: 1, body: json!({"error": "malformed_input", "message": m}) },
        Err(Failure::Domain(body)) => Outcome { code: 2, body },
    }
}

/// Parses the input text and runs; malformed JSON exits 1.
pub fn run_text(req: &CommandRequest, text: &str) -> Outcome {
    let input = if req.needs_input() {
        match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                return Outcome {
                    code: 1,
                    body: json!({"error": "malformed_input", "message": format!("bad JSON: {e}")}),
                }
            }
        }
    } else {
        Value::Null
    };
    run(req, &input)
}

/// Float-only commands, monomorphized for float quaternions.
struct FloatOps {
    ode_solve: fn(&Value, Tol) -> Res<Value>,
    ode_check: fn(&Value, Tol) -> Res<Value>,
    exp_identity: fn(&Value) -> Res<Value>,
}

fn float_ops() -> FloatOps {
    FloatOps {
        ode_solve: ode_solve::<FloatQuaternion>,
        ode_check: ode_check::<FloatQuaternion>,
        exp_identity: exp_identity::<FloatQuaternion>,
    }
}

fn field<'a>(v: &'a Value, key: &str) -> Res<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn matrix_field<S: JsonScalar>(v: &Value, key: &str) -> Res<Matrix<S>> {
    Ok(matrix_from_json(field(v, key)?)?)
}

fn scalar_field<S: JsonScalar>(v: &Value, key: &str) -> Res<S> {
    Ok(S::from_json(field(v, key)?)?)
}

fn f64_field(v: &Value, key: &str, default: f64) -> Res<f64> {
    match v.get(key) {
        None => Ok(default),
        Some(x) => x.as_f64().ok_or_else(|| malformed(format!("\"{key}\" must be a number"))),
    }
}

fn side_of(v: &Value) -> Res<Side> {
    match field(v, "side")?.as_str() {
        Some("left") => Ok(Side::Left),
        Some("right") => Ok(Side::Right),
        _ => Err(malformed("\"side\" must be \"left\" or \"right\"")),
    }
}

fn kind_of(v: &Value, default: Kind) -> Res<Kind> {
    match v.get("kind").map(Value::as_str) {
        None => Ok(default),
        Some(Some("rc")) => Ok(Kind::Rc),
        Some(Some("cr")) => Ok(Kind::Cr),
        Some(_) => Err(malformed("\"kind\" must be \"rc\" or \"cr\"")),
    }
}

fn index_field(v: &Value, key: &str) -> Res<Option<usize>> {
    match v.get(key) {
        None => Ok(None),
        Some(x) => match x.as_u64() {
            Some(i) if i >= 1 => Ok(Some(i as usize - 1)),
            _ => Err(malformed(format!("\"{key}\" must be a 1-based index"))),
        },
    }
}

/// A vector given as a matrix object or as a flat array, shaped to the pair.
fn pair_vector<S: JsonScalar>(v: &Value, column: bool) -> Res<Matrix<S>> {
    if v.is_object() {
        return Ok(matrix_from_json(v)?);
    }
    let entries: Vec<S> = vector_from_json(v)?;
    if entries.is_empty() {
        return Err(malformed("eigenvector must be nonempty"));
    }
    Ok(if column { Matrix::column_vector(entries) } else { Matrix::row_vector(entries) })
}

fn parse_pair<S: JsonScalar>(v: &Value, default_kind: Kind) -> Res<EigenPair<S>> {
    let side = side_of(v)?;
    let kind = kind_of(v, default_kind)?;
    let vector = pair_vector(field(v, "vector")?, eigen::uses_column(side, kind))?;
    Ok(EigenPair::new(scalar_field(v, "value")?, vector, side, kind))
}

fn pair_to_json<S: JsonScalar>(p: &EigenPair<S>) -> Value {
    json!({
        "value": p.value.to_json(),
        "vector": matrix_to_json(&p.vector),
        "side": p.side.as_str(),
        "kind": p.kind.as_str(),
    })
}

fn form_of(v: &Value) -> Res<SolutionForm> {
    match field(v, "form")?.as_str() {
        Some("right_exp") => Ok(SolutionForm::RightExp),
        Some("left_exp") => Ok(SolutionForm::LeftExp),
        _ => Err(malformed("\"form\" must be \"right_exp\" or \"left_exp\"")),
    }
}

fn dispatch<S: JsonScalar>(req: &CommandRequest, input: &Value, float: Option<FloatOps>) -> Res<Outcome> {
    let kind: Kind = req.kind.into();
    let tol = Tol::new(req.tol);
    let body = match req.command {
        Command::Mul => {
            let (a, b) = (matrix_field::<S>(input, "a")?, matrix_field::<S>(input, "b")?);
            matrix_to_json(&mul(&a, &b, kind)?)
        }
        Command::Power => {
            let a = matrix_field::<S>(input, "a")?;
            let k = field(input, "k")?.as_u64().and_then(|k| u32::try_from(k).ok());
            let k = k.ok_or_else(|| malformed("\"k\" must be a non-negative integer"))?;
            matrix_to_json(&power(&a, k, kind)?)
        }
        Command::Invert => matrix_to_json(&inverse(&matrix_field::<S>(input, "a")?, kind, tol)?),
        Command::Rank => {
            let a = matrix_field::<S>(input, "a")?;
            json!({"rank": rank(&a, kind, tol), "rows": a.rows(), "cols": a.cols()})
        }
        Command::Quasidet => {
            let a = matrix_field::<S>(input, "a")?;
            match (index_field(input, "i")?, index_field(input, "j")?) {
                (Some(i), Some(j)) => json!({"value": quasidet(&a, QuasidetIndex::new(i, j), kind, tol)?.to_json()}),
                (None, None) => {
                    let qm = quasidet_matrix(&a, kind, tol)?;
                    let entries: Vec<Vec<Value>> = qm
                        .row_vecs()
                        .map(|r| r.iter().map(|e| e.as_ref().map_or_else(|| json!("undefined"), S::to_json)).collect())
                        .collect();
                    json!({"rows": qm.rows(), "cols": qm.cols(), "entries": entries})
                }
                _ => return Err(malformed("give both \"i\" and \"j\" or neither")),
            }
        }
        Command::EigVerify => {
            let a = matrix_field::<S>(input, "a")?;
            let p = parse_pair::<S>(field(input, "pair")?, kind)?;
            json!({"pass": eigen::eigen_check(&a, &p, tol)?, "residual": eigen::eigen_residual(&a, &p)?})
        }
        Command::Diagonalize => {
            let (a, u) = (matrix_field::<S>(input, "a")?, matrix_field::<S>(input, "u")?);
            match eigen::diagonalize_via(&a, &u, kind, side_of(input)?, tol) {
                Ok(d) => json!({"d": matrix_to_json(&d)}),
                Err(DiagonalizeError::Precondition(e)) => return Err(e.into()),
                Err(DiagonalizeError::NotDiagonal { residual }) => {
                    return Err(Failure::Domain(json!({
                        "error": "not_diagonal",
                        "residual": matrix_to_json(&residual),
                        "message": "u does not diagonalize a",
                    })))
                }
            }
        }
        Command::Spectrum => {
            let u = matrix_field::<S>(input, "u")?;
            let d: Vec<S> = vector_from_json(field(input, "d")?)?;
            let r = eigen::spectrum(&u, &d, kind, side_of(input)?, tol)?;
            let entries: Vec<Value> = r
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "pair": pair_to_json(&e.pair),
                        "residual": e.residual,
                        "matrix_singular": e.matrix_singular,
                        "pair_singular": e.pair_singular,
                    })
                })
                .collect();
            json!({"matrix": matrix_to_json(&r.matrix), "kind": r.kind.as_str(), "side": r.side.as_str(), "entries": entries})
        }
        Command::Conjugate => {
            let p = parse_pair::<S>(field(input, "pair")?, kind)?;
            let c = scalar_field::<S>(input, "c")?;
            let moved = eigen::conjugate_eigen(&p, &c)?;
            let mut out = json!({"pair": pair_to_json(&moved)});
            if input.get("a").is_some() {
                let a = matrix_field::<S>(input, "a")?;
                out["pass"] = json!(eigen::eigen_check(&a, &moved, tol)?);
                out["scaling_preserves"] = json!(eigen::scaling_preserves(&p, &c, &a, tol)?);
                out["commutes_with_entries"] = json!(eigen::commutes_with_entries(&c, &a, tol));
            }
            out
        }
        Command::OdeSolve | Command::OdeCheck | Command::ExpIdentity => {
            let ops = float.ok_or(Error::UnsupportedMode)?;
            match req.command {
                Command::OdeSolve => (ops.ode_solve)(input, tol)?,
                Command::OdeCheck => (ops.ode_check)(input, tol)?,
                _ => (ops.exp_identity)(input)?,
            }
        }
        Command::Selftest { samples } => {
            let report = selftest::run(&selftest::Config { seed: req.seed, samples, tol });
            // timings are left out so that output depends only on the request
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(
                    |c| json!({"name": c.name, "passed": c.passed, "total": c.total, "informational": c.informational}),
                )
                .collect();
            let body = json!({"ok": report.ok(), "seed": req.seed, "checks": checks});
            return Ok(Outcome { code: if report.ok() { 0 } else { 2 }, body });
        }
    };
    Ok(Outcome::ok(body))
}

fn system_input<S: JsonScalar + FloatScalar>(input: &Value) -> Res<(LinearSystem<S>, S, Vec<S>, SolutionForm)> {
    let sys = LinearSystem::new(matrix_field::<S>(input, "a")?)?;
    Ok((sys, scalar_field(input, "b")?, vector_from_json(field(input, "c")?)?, form_of(input)?))
}

fn ode_solve<S: JsonScalar + FloatScalar>(input: &Value, tol: Tol) -> Res<Value> {
    let (sys, b, c, form) = system_input::<S>(input)?;
    let sol = ode::build_solution(&sys, &b, &c, form, tol)?;
    let table =
        ode::grid().map(|t| Ok(json!({"t": t, "residual": sol.residual(&sys, t)?}))).collect::<Res<Vec<_>>>()?;
    Ok(json!({
        "form": form.as_str(),
        "b": b.to_json(),
        "c": vector_to_json(&c),
        "residuals": table,
        "max_residual": sol.grid_residual(&sys)?,
    }))
}

fn ode_check<S: JsonScalar + FloatScalar>(input: &Value, tol: Tol) -> Res<Value> {
    let (sys, b, c, form) = system_input::<S>(input)?;
    let t_end = f64_field(input, "t_end", 1.0)?;
    let h = f64_field(input, "h", 1e-3)?;
    let sol = ode::build_solution(&sys, &b, &c, form, tol)?;
    let traj = ode::rk4_system(&sys, &sol.eval(0.0), t_end, h)?;
    let exact = sol.eval(t_end);
    let gap = exact.iter().zip(traj.last()).map(|(x, y)| (x.clone() - y.clone()).magnitude()).fold(0.0, f64::max);
    Ok(json!({
        "t_end": t_end,
        "h": h,
        "closed_form": vector_to_json(&exact),
        "rk4": vector_to_json(traj.last()),
        "max_difference": gap,
    }))
}

fn exp_identity<S: JsonScalar + FloatScalar>(input: &Value) -> Res<Value> {
    let a = scalar_field::<S>(input, "a")?;
    let c = scalar_field::<S>(input, "c")?;
    let t = field(input, "t")?.as_f64().ok_or_else(|| malformed("\"t\" must be a number"))?;
    Ok(json!({"residuals": ode::conj_exp_residuals(&a, &c, t)?}))
}
