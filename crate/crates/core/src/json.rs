//! JSON encodings of descriptors, elements, matrices, hatted parameters,
//! witnesses and domain reports.
//!
//! Output goes through [`serde_json::Value`], whose maps are ordered by
//! key, so [`to_canonical`] gives byte-stable text.

use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Map, Value};

use crate::birational::{EquivWitness, HatParams, WitnessKind};
use crate::domain::{DomainReport, ElementStatus};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{RingDescriptor, RingElem};

/// Pretty-printed JSON with sorted keys and a trailing newline.
pub fn to_canonical(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialise");
    s.push('\n');
    s
}

pub fn descriptor_to_json(d: &RingDescriptor) -> Value {
    serde_json::to_value(d).expect("descriptors always serialise")
}

pub fn descriptor_from_json(v: &Value) -> Result<RingDescriptor> {
    serde_json::from_value(v.clone()).map_err(|e| Error::InvalidDescriptor(e.to_string()))
}

pub fn elem_to_json(e: &RingElem) -> Value {
    if let Some(q) = e.as_fraction() {
        return Value::String(format!("{}/{}", q.numer(), q.denom()));
    }
    if let Some(r) = e.as_residue() {
        return json!(r);
    }
    let entries = e.block_entries().expect("three element kinds");
    let k = (entries.len() as f64).sqrt() as usize;
    Value::Array(
        entries
            .chunks(k)
            .map(|row| Value::Array(row.iter().map(elem_to_json).collect()))
            .collect(),
    )
}

fn parse_fraction(s: &str) -> Result<BigRational> {
    let bad = || Error::Malformed(format!("not a fraction: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| bad())?;
    let den = BigInt::from_str(den).map_err(|_| bad())?;
    if den == BigInt::from(0) {
        return Err(Error::Malformed(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

pub fn elem_from_json(ring: &Arc<RingDescriptor>, v: &Value) -> Result<RingElem> {
    match &**ring {
        RingDescriptor::Fraction => match v {
            Value::String(s) => Ok(RingElem::fraction(parse_fraction(s)?)),
            Value::Number(n) if n.is_i64() => Ok(RingElem::ratio(n.as_i64().unwrap(), 1)),
            other => Err(Error::Malformed(format!(
                "expected a fraction, got {other}"
            ))),
        },
        RingDescriptor::ModP { .. } => match v.as_i64() {
            Some(n) => Ok(RingElem::integer(ring, n)),
            None => Err(Error::Malformed(format!("expected a residue, got {v}"))),
        },
        RingDescriptor::BlockMatrix { block_size, inner } => {
            let rows = square_rows(v, *block_size, "block")?;
            let entries = rows
                .iter()
                .flat_map(|row| row.iter())
                .map(|x| elem_from_json(inner, x))
                .collect::<Result<Vec<_>>>()?;
            RingElem::block(ring, entries)
        }
    }
}

fn square_rows<'a>(v: &'a Value, n: usize, what: &str) -> Result<Vec<&'a Vec<Value>>> {
    let rows = v
        .as_array()
        .ok_or_else(|| Error::Malformed(format!("{what} must be an array of rows")))?;
    if rows.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: rows.len(),
        });
    }
    rows.iter()
        .map(|r| match r.as_array() {
            Some(r) if r.len() == n => Ok(r),
            Some(r) => Err(Error::DimensionMismatch {
                left: n,
                right: r.len(),
            }),
            None => Err(Error::Malformed(format!("{what} row must be an array"))),
        })
        .collect()
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::Malformed(format!("missing field {key:?}")))
}

fn ring_of(v: &Value) -> Result<Arc<RingDescriptor>> {
    Ok(Arc::new(descriptor_from_json(field(v, "ring")?)?))
}

pub fn matrix_to_json(m: &Matrix<RingElem>) -> Value {
    json!({
        "ring": descriptor_to_json(m.sample_entry().descriptor()),
        "n": m.n(),
        "entries": m
            .rows()
            .iter()
            .map(|r| r.iter().map(elem_to_json).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
    })
}

pub fn matrix_from_json(v: &Value) -> Result<Matrix<RingElem>> {
    let ring = ring_of(v)?;
    let n = field(v, "n")?
        .as_u64()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Error::Malformed("\"n\" must be a positive integer".into()))?
        as usize;
    let rows = square_rows(field(v, "entries")?, n, "entries")?;
    let rows = rows
        .iter()
        .map(|r| r.iter().map(|x| elem_from_json(&ring, x)).collect())
        .collect::<Result<Vec<Vec<_>>>>()?;
    Matrix::from_rows(rows)
}

pub fn hat_to_json(p: &HatParams<RingElem>) -> Value {
    json!({
        "ring": descriptor_to_json(p.a.descriptor()),
        "a": elem_to_json(&p.a),
        "b": elem_to_json(&p.b),
        "c": elem_to_json(&p.c),
        "d": elem_to_json(&p.d),
    })
}

pub fn hat_from_json(v: &Value) -> Result<HatParams<RingElem>> {
    let ring = ring_of(v)?;
    let get = |k| elem_from_json(&ring, field(v, k)?);
    HatParams::new(get("a")?, get("b")?, get("c")?, get("d")?)
}

/// A matrix or a hatted parameter set, told apart by the `entries` key.
#[derive(Clone, Debug, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum Input {
    Matrix(Matrix<RingElem>),
    Hat(HatParams<RingElem>),
}

impl Input {
    pub fn from_json(v: &Value) -> Result<Self> {
        if v.get("entries").is_some() {
            matrix_from_json(v).map(Input::Matrix)
        } else if v.get("a").is_some() {
            hat_from_json(v).map(Input::Hat)
        } else {
            Err(Error::Malformed(
                "expected a matrix (\"entries\") or hatted parameters (\"a\"..\"d\")".into(),
            ))
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Input::Matrix(m) => matrix_to_json(m),
            Input::Hat(p) => hat_to_json(p),
        }
    }

    /// The full matrix, expanding hatted parameters.
    pub fn into_matrix(self) -> Matrix<RingElem> {
        match self {
            Input::Matrix(m) => m,
            Input::Hat(p) => p.to_matrix(),
        }
    }
}

pub fn witness_to_json(w: &EquivWitness<RingElem>) -> Value {
    let diag = |d: &[RingElem]| d.iter().map(elem_to_json).collect::<Vec<_>>();
    let mut obj = Map::new();
    obj.insert(
        "ring".into(),
        descriptor_to_json(w.pair.left[0].descriptor()),
    );
    obj.insert("d1".into(), Value::Array(diag(&w.pair.left)));
    obj.insert("d2".into(), Value::Array(diag(&w.pair.right)));
    let kind = match w.kind() {
        WitnessKind::DiagPair => "diag-pair",
        WitnessKind::CentralConjugation => "central-conjugation",
    };
    obj.insert("kind".into(), json!(kind));
    if let Some(x) = &w.conjugator {
        obj.insert("x".into(), elem_to_json(x));
    }
    obj.insert("verified".into(), json!(true));
    Value::Object(obj)
}

pub fn domain_report_to_json(r: &DomainReport) -> Value {
    let checklist: Vec<Value> = r
        .checklist
        .iter()
        .map(|e| {
            let (invertible, blocked_by) = match &e.status {
                ElementStatus::Unit => (json!(true), Value::Null),
                ElementStatus::NonUnit => (json!(false), Value::Null),
                ElementStatus::Blocked { by } => (Value::Null, json!(by)),
            };
            json!({"label": e.label, "invertible": invertible, "blocked_by": blocked_by})
        })
        .collect();
    json!({
        "member": r.member,
        "failing_element": r.failing_element,
        "checklist": checklist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;

    #[test]
    fn fraction_rendering() {
        assert_eq!(elem_to_json(&RingElem::ratio(3, 1)), json!("3/1"));
        assert_eq!(elem_to_json(&RingElem::ratio(-4, 6)), json!("-2/3"));
        let q = Arc::new(RingDescriptor::fraction());
        assert_eq!(
            elem_from_json(&q, &json!("3")).unwrap(),
            RingElem::ratio(3, 1)
        );
        assert_eq!(
            elem_from_json(&q, &json!(-2)).unwrap(),
            RingElem::ratio(-2, 1)
        );
        assert!(elem_from_json(&q, &json!("1/0")).is_err());
        assert!(elem_from_json(&q, &json!("x")).is_err());
    }

    #[test]
    fn block_round_trip() {
        let ring = Arc::new(RingDescriptor::default_verification());
        let v = json!([[1, 2], [100, -1]]);
        let e = elem_from_json(&ring, &v).unwrap();
        assert_eq!(elem_to_json(&e), json!([[1, 2], [100, 100]]));
        assert!(elem_from_json(&ring, &json!([[1, 2]])).is_err());
    }

    #[test]
    fn hat_round_trip_is_canonical() {
        let text = r#"{"ring":{"kind":"fraction"},"a":"2","b":"3/1","c":5,"d":"14/2"}"#;
        let p = hat_from_json(&serde_json::from_str(text).unwrap()).unwrap();
        let out = to_canonical(&hat_to_json(&p));
        let again = hat_from_json(&serde_json::from_str(&out).unwrap()).unwrap();
        assert_eq!(again, p);
        assert_eq!(to_canonical(&hat_to_json(&again)), out);
        assert!(out.find("\"a\"").unwrap() < out.find("\"ring\"").unwrap());
    }

    #[test]
    fn matrix_round_trip() {
        let ring = Arc::new(RingDescriptor::mod_p(7).unwrap());
        let m = Matrix::from_rows(vec![
            vec![RingElem::integer(&ring, 3), RingElem::integer(&ring, 6)],
            vec![RingElem::integer(&ring, 1), RingElem::zero(&ring)],
        ])
        .unwrap();
        let v = matrix_to_json(&m);
        assert_eq!(v["entries"], json!([[3, 6], [1, 0]]));
        assert_eq!(matrix_from_json(&v).unwrap(), m);
        assert!(matches!(Input::from_json(&v).unwrap(), Input::Matrix(_)));
        let mut bad = v.clone();
        bad["n"] = json!(3);
        assert!(matrix_from_json(&bad).is_err());
        assert!(m.get(1, 1).is_zero());
    }
}
