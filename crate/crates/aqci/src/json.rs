//! JSON encoding of data, invariants and multiplicity results.
//!
//! A datum is `{"n": 3, "sets": [{"elements": [1, 2, 3], "weight": 1}, ..]}`
//! with elements ascending and sets ordered by (least element, size).
//! Weights and other integers are JSON numbers of any size; rationals are
//! strings `"p/q"` (or `"p"`) so no precision is lost.

use aqci_core::canon::Shape;
use aqci_core::invariants::{main_bound, two_pow_n_minus_1, InvariantSummary};
use aqci_core::multiplicity::{HilbertSamuelTable, MultiplicityResult, MultiplicityStatus};
use aqci_core::{RawDatum, Rational, SpecialDatum, ValidationReport};
use num_bigint::BigInt;
use serde_json::{json, Map, Number, Value};

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("malformed datum JSON: {0}")]
    Malformed(String),
    #[error("invalid special datum:\n{0}")]
    Invalid(ValidationReport),
}

/// Arbitrary-size integer as a JSON number.
pub fn integer<T: std::fmt::Display>(v: T) -> Value {
    let n: Number = serde_json::from_str(&v.to_string()).expect("decimal integers are JSON numbers");
    Value::Number(n)
}

pub fn rational(r: &Rational) -> Value {
    Value::String(r.to_string())
}

pub fn datum(d: &SpecialDatum) -> Value {
    let sets: Vec<Value> = d
        .members()
        .iter()
        .map(|m| json!({"elements": m.elements(), "weight": integer(m.weight())}))
        .collect();
    json!({"n": d.n(), "sets": sets})
}

fn parse_integer(v: &Value, what: &str) -> Result<BigInt, LoadError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => return Err(LoadError::Malformed(format!("{what} must be an integer, found {other}"))),
    };
    text.parse::<BigInt>()
        .map_err(|_| LoadError::Malformed(format!("{what} must be an integer, found {text}")))
}

fn parse_small(v: &Value, what: &str) -> Result<i64, LoadError> {
    let big = parse_integer(v, what)?;
    i64::try_from(big).map_err(|_| LoadError::Malformed(format!("{what} is out of range")))
}

/// Reads the JSON form without checking the axioms.
pub fn raw_from_value(v: &Value) -> Result<RawDatum, LoadError> {
    let obj = v.as_object().ok_or_else(|| LoadError::Malformed("expected a JSON object".into()))?;
    let n = parse_small(obj.get("n").ok_or_else(|| LoadError::Malformed("missing field \"n\"".into()))?, "n")?;
    let sets = obj
        .get("sets")
        .and_then(Value::as_array)
        .ok_or_else(|| LoadError::Malformed("missing array \"sets\"".into()))?;
    let mut out = Vec::with_capacity(sets.len());
    for (i, s) in sets.iter().enumerate() {
        let elements = s
            .get("elements")
            .and_then(Value::as_array)
            .ok_or_else(|| LoadError::Malformed(format!("sets[{i}] lacks an \"elements\" array")))?
            .iter()
            .map(|e| parse_small(e, &format!("sets[{i}].elements")))
            .collect::<Result<Vec<i64>, _>>()?;
        let weight = parse_integer(
            s.get("weight").ok_or_else(|| LoadError::Malformed(format!("sets[{i}] lacks \"weight\"")))?,
            &format!("sets[{i}].weight"),
        )?;
        out.push((elements, weight));
    }
    Ok(RawDatum::new(n, out))
}

pub fn raw_from_str(text: &str) -> Result<RawDatum, LoadError> {
    let v: Value = serde_json::from_str(text).map_err(|e| LoadError::Malformed(e.to_string()))?;
    raw_from_value(&v)
}

pub fn datum_from_str(text: &str) -> Result<SpecialDatum, LoadError> {
    SpecialDatum::from_raw(&raw_from_str(text)?).map_err(LoadError::Invalid)
}

/// Compact text form of a shape: `.` for a leaf, `r(..)` for a member
/// whose children have `r` times its weight.
pub fn shape_text(s: &Shape) -> String {
    match s {
        Shape::Leaf => ".".into(),
        Shape::Node { ratio, children } => {
            let inner: Vec<String> = children.iter().map(shape_text).collect();
            format!("{ratio}({})", inner.join(","))
        }
    }
}

pub fn forest_text(f: &[Shape]) -> String {
    f.iter().map(shape_text).collect::<Vec<_>>().join(" ")
}

pub fn summary(s: &InvariantSummary) -> Value {
    let members: Vec<Value> = s
        .members
        .iter()
        .map(|m| {
            json!({
                "elements": m.elements,
                "weight": integer(&m.weight),
                "delta": m.delta,
                "alpha": rational(&m.alpha),
                "beta": rational(&m.beta),
            })
        })
        .collect();
    let closure = match &s.closure_power {
        Ok(Some(q)) => integer(q),
        Ok(None) => Value::Null,
        Err(e) => Value::String(e.to_string()),
    };
    json!({
        "n": s.n,
        "emb": s.emb,
        "connected": s.connected,
        "maximal_members": s.maximal_count,
        "group_order": {"recursion": integer(&s.group_order), "lattice": integer(&s.group_order_oracle)},
        "lct": {"recursion": rational(&s.lct), "lp": rational(&s.lct_lp)},
        "m_of_d": integer(&s.m_of_d),
        "alpha_product": rational(&s.alpha_product),
        "volume_bound": rational(&s.volume_bound),
        "upper_bounds": {
            "two_pow_n_minus_1": integer(two_pow_n_minus_1(s.n)),
            "two_pow_n_minus_ceil_lct": rational(&main_bound(s.n, &s.lct)),
        },
        "closure_power": closure,
        "members": members,
    })
}

pub fn multiplicity(m: &MultiplicityResult) -> Value {
    let trace: Vec<Value> = m
        .trace
        .iter()
        .map(|t| json!({"rule": t.rule.name(), "member": t.member, "n": t.dimension, "statement": t.rule.statement()}))
        .collect();
    json!({
        "status": match m.status { MultiplicityStatus::Exact => "exact", MultiplicityStatus::Interval => "interval" },
        "value": m.value.as_ref().map(integer).unwrap_or(Value::Null),
        "lower": rational(&m.lower),
        "upper": rational(&m.upper),
        "trace": trace,
    })
}

pub fn oracle(t: &HilbertSamuelTable) -> Value {
    json!({
        "status": t.status(),
        "e": t.e,
        "lengths": t.values,
        "differences": t.differences,
        "points": t.points,
    })
}

pub fn witness(pairs: &[(String, String)]) -> Value {
    let mut m = Map::new();
    for (k, v) in pairs {
        m.insert(k.clone(), Value::String(v.clone()));
    }
    Value::Object(m)
}
