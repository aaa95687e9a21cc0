//! JSON encodings shared by the command-line tool.
//!
//! Integers that fit in 64 bits are written as JSON numbers and larger ones
//! as decimal strings; matrix entries are always decimal strings. Readers
//! accept either form.

use num_rational::Ratio;
use serde_json::{json, Map, Value};

use crate::cf::{CfKind, RegularCf};
use crate::error::{Error, Result};
use crate::gl2::{Axis, BoundaryPoint, Decomposition, IntMat2};
use crate::hecke::genus;
use crate::invariants::{validate_delta, LaminationInvariant};
use crate::legendre::LegendreStep;
use crate::scalar::Int;
use crate::surd::QuadSurd;

fn parse_err(what: &str, v: &Value) -> Error {
    Error::Parse(format!("expected {what}, got {v}"))
}

pub fn int_to_json<T: Int>(x: &T) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn int_from_json<T: Int>(v: &Value) -> Result<T> {
    let text = match v {
        Value::Number(n) if n.is_i64() || n.is_u64() => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        _ => return Err(parse_err("an integer", v)),
    };
    text.parse().map_err(|_| parse_err("an integer", v))
}

fn ints_to_json<T: Int>(xs: &[T]) -> Value {
    Value::Array(xs.iter().map(int_to_json).collect())
}

fn ints_from_json<T: Int>(v: &Value) -> Result<Vec<T>> {
    v.as_array()
        .ok_or_else(|| parse_err("an array", v))?
        .iter()
        .map(int_from_json)
        .collect()
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn object<'a>(v: &'a Value, what: &str) -> Result<&'a Map<String, Value>> {
    v.as_object().ok_or_else(|| parse_err(what, v))
}

/// `{"prefix":[…],"period":[…],"kind":…}`; `period` only for periodic kinds.
pub fn cf_to_json<T: Int>(cf: &RegularCf<T>) -> Value {
    let mut obj = Map::new();
    obj.insert("prefix".into(), ints_to_json(cf.prefix()));
    if cf.kind() == CfKind::Periodic {
        obj.insert("period".into(), ints_to_json(cf.period()));
    }
    obj.insert("kind".into(), Value::from(cf.kind().as_str()));
    Value::Object(obj)
}

/// Reads a fraction; without `kind`, a non-empty `period` means periodic
/// and anything else finite.
pub fn cf_from_json<T: Int>(v: &Value) -> Result<RegularCf<T>> {
    let obj = object(v, "a continued fraction object")?;
    let prefix = ints_from_json(field(obj, "prefix")?)?;
    let period: Vec<T> = match obj.get("period") {
        None | Some(Value::Null) => Vec::new(),
        Some(p) => ints_from_json(p)?,
    };
    let kind = match obj.get("kind") {
        None => None,
        Some(k) => Some(k.as_str().ok_or_else(|| parse_err("a kind string", k))?),
    };
    match kind {
        Some("periodic") => RegularCf::periodic(prefix, period),
        Some("finite") | Some("prefix") if !period.is_empty() => Err(Error::Parse(
            "only periodic fractions carry a period".into(),
        )),
        Some("finite") => RegularCf::finite(prefix),
        Some("prefix") => RegularCf::prefix_only(prefix),
        None if !period.is_empty() => RegularCf::periodic(prefix, period),
        None => RegularCf::finite(prefix),
        Some(other) => Err(Error::Parse(format!("unknown kind {other:?}"))),
    }
}

/// `{"a":"…","b":"…","c":"…","d":"…"}`.
pub fn matrix_to_json<T: Int>(m: &IntMat2<T>) -> Value {
    let [a, b, c, d] = m.entries();
    json!({"a": a.to_string(), "b": b.to_string(), "c": c.to_string(), "d": d.to_string()})
}

pub fn matrix_from_json<T: Int>(v: &Value) -> Result<IntMat2<T>> {
    let obj = object(v, "a matrix object")?;
    let get = |k: &str| -> Result<T> { int_from_json(field(obj, k)?) };
    IntMat2::new(get("a")?, get("b")?, get("c")?, get("d")?)
}

pub fn surd_to_json<T: Int>(s: &QuadSurd<T>) -> Value {
    json!({"p": int_to_json(s.p()), "q": int_to_json(s.q()), "r": int_to_json(s.r()), "D": int_to_json(s.radicand())})
}

pub fn surd_from_json<T: Int>(v: &Value) -> Result<QuadSurd<T>> {
    let obj = object(v, "a surd object")?;
    let get = |k: &str| -> Result<T> { int_from_json(field(obj, k)?) };
    QuadSurd::new(get("p")?, get("q")?, get("r")?, get("D")?)
}

/// `"inf"`, `{"num":…,"den":…}` or a surd object.
pub fn point_to_json<T: Int>(p: &BoundaryPoint<T>) -> Value {
    match p {
        BoundaryPoint::Infinity => Value::from("inf"),
        BoundaryPoint::Rational(x) => {
            json!({"num": int_to_json(x.numer()), "den": int_to_json(x.denom())})
        }
        BoundaryPoint::Surd(s) => surd_to_json(s),
    }
}

pub fn point_from_json<T: Int>(v: &Value) -> Result<BoundaryPoint<T>> {
    if v.as_str() == Some("inf") {
        return Ok(BoundaryPoint::Infinity);
    }
    let obj = object(v, "a boundary point")?;
    if obj.contains_key("num") {
        let den: T = int_from_json(field(obj, "den")?)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        return Ok(BoundaryPoint::Rational(Ratio::new(
            int_from_json(field(obj, "num")?)?,
            den,
        )));
    }
    surd_from_json(v).map(BoundaryPoint::Surd)
}

pub fn axis_to_json<T: Int>(axis: &Axis<T>) -> Value {
    json!({
        "endpoints": [point_to_json(&axis.endpoints[0]), point_to_json(&axis.endpoints[1])],
        "trace": int_to_json(&axis.trace),
        "length": axis.length,
    })
}

pub fn decomposition_to_json<T: Int>(d: &Decomposition<T>) -> Value {
    json!({"p0": int_to_json(&d.p0), "terms": ints_to_json(&d.terms)})
}

pub fn step_to_json<T: Int>(s: &LegendreStep<T>) -> Value {
    json!({
        "k": s.k,
        "term": int_to_json(&s.term),
        "gamma": matrix_to_json(&s.gamma),
        "trace": int_to_json(&s.trace),
        "singleton_candidate": s.singleton_candidate,
        "in_gamma0N": s.in_gamma0,
        "axis_length": s.axis_length,
    })
}

pub fn step_from_json<T: Int>(v: &Value) -> Result<LegendreStep<T>> {
    let obj = object(v, "a step object")?;
    let k = field(obj, "k")?;
    let k = k.as_u64().ok_or_else(|| parse_err("an index", k))? as usize;
    let gamma: IntMat2<T> = matrix_from_json(field(obj, "gamma")?)?;
    let trace = gamma.trace();
    let flag = |key: &str| -> Result<bool> {
        let f = field(obj, key)?;
        f.as_bool().ok_or_else(|| parse_err("a boolean", f))
    };
    let len = field(obj, "axis_length")?;
    Ok(LegendreStep {
        k,
        term: int_from_json(field(obj, "term")?)?,
        singleton_candidate: gamma.det().is_one(),
        in_gamma0: flag("in_gamma0N")?,
        axis_length: len.as_f64().ok_or_else(|| parse_err("a number", len))?,
        trace,
        gamma,
    })
}

/// `{"level":N,"theta":{…},"delta":[doubled parts],"approximate":bool}`.
pub fn invariant_to_json<T: Int>(inv: &LaminationInvariant<T>) -> Value {
    json!({
        "level": inv.level(),
        "theta": cf_to_json(inv.theta()),
        "delta": inv.delta().doubled_parts(),
        "approximate": inv.is_approximate(),
    })
}

/// Reads an invariant; `approximate` is recomputed from `theta`.
pub fn invariant_from_json<T: Int>(v: &Value) -> Result<LaminationInvariant<T>> {
    let obj = object(v, "an invariant object")?;
    let level = field(obj, "level")?;
    let level = level.as_u64().ok_or_else(|| parse_err("a level", level))?;
    let theta = cf_from_json(field(obj, "theta")?)?;
    let delta = field(obj, "delta")?;
    let parts: Vec<u64> = delta
        .as_array()
        .ok_or_else(|| parse_err("an array", delta))?
        .iter()
        .map(|p| p.as_u64().ok_or_else(|| parse_err("a doubled part", p)))
        .collect::<Result<_>>()?;
    let g = genus(level)?;
    let delta =
        validate_delta(&parts, g).map_err(|_| Error::InvalidDeltaForLevel { level, genus: g })?;
    LaminationInvariant::new(theta, delta, level)
}

/// `{"error": code, "detail": message}`.
pub fn error_to_json(e: &Error) -> Value {
    json!({"error": e.code(), "detail": e.to_string()})
}
