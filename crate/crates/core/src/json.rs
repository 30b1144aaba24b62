//! The `vertexlab/1` JSON encoding. Object keys come out sorted, so equal
//! inputs serialize to identical bytes.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::bs_pairs::{Direction, SheafDescription};
use crate::charlab::{Character, Monomial, TruncSeries, VarRegistry};
use crate::checks::Report;
use crate::cy_vertex::CrcOutcome;
use crate::partitions::{MultiPartition, Partition};
use crate::qm_components::{degrees, fixed_term_dim, to_curve_class, CurveClass, HookLabeling};
use crate::quiver_geom::QuiverData;
use crate::{Error, Result};

pub const SCHEMA: &str = "vertexlab/1";

/// Wraps `body` as `{"schema": "vertexlab/1", "kind": kind, ...body}`.
pub fn envelope(kind: &str, body: Value) -> Value {
    let mut map = match body {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    };
    map.insert("schema".into(), SCHEMA.into());
    map.insert("kind".into(), kind.into());
    Value::Object(map)
}

pub fn partition(p: &Partition) -> Value {
    json!(p.parts())
}

pub fn multipartition(l: &MultiPartition) -> Value {
    Value::Array(l.legs().iter().map(partition).collect())
}

/// Parses `[[3,1],[],[2]]`. Parts must be positive and weakly decreasing.
pub fn parse_multipartition(s: &str) -> Result<MultiPartition> {
    let v: Value = serde_json::from_str(s).map_err(|e| Error::Invalid(format!("legs: {e}")))?;
    let legs = v
        .as_array()
        .ok_or_else(|| Error::Invalid("legs: expected an array of partitions".into()))?;
    let legs = legs
        .iter()
        .map(|leg| {
            let parts = leg
                .as_array()
                .ok_or_else(|| Error::Invalid(format!("legs: {leg} is not an array")))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .filter(|&k| k > 0)
                        .map(|k| k as usize)
                        .ok_or_else(|| Error::Invalid(format!("legs: part {x} is not a positive integer")))
                })
                .collect::<Result<Vec<_>>>()?;
            Partition::new(parts)
        })
        .collect::<Result<Vec<_>>>()?;
    MultiPartition::new(legs)
}

fn exps_object(reg: &VarRegistry, w: &Monomial, doubled: bool) -> Value {
    let mut m = Map::new();
    for (i, e2) in w.iter() {
        let e = if doubled { e2 } else { e2 / 2 };
        m.insert(reg.name(i).to_string(), json!(e));
    }
    Value::Object(m)
}

/// `{"terms":[{"exps":{"x":-2,"y":1},"mult":3}]}`; a term with a
/// half-integral exponent carries doubled exponents under `"exps2"`.
pub fn character(c: &Character) -> Value {
    let reg = c.registry();
    let terms: Vec<Value> = c
        .terms()
        .map(|(w, k)| {
            if w.is_integral() {
                json!({"exps": exps_object(reg, w, false), "mult": k})
            } else {
                json!({"exps2": exps_object(reg, w, true), "mult": k})
            }
        })
        .collect();
    json!({ "terms": terms })
}

fn big(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(k) => json!(k),
        None => json!(n.to_string()),
    }
}

/// `{"order":N,"vars":[…],"weights":[…],"coeffs":[{"exps":{…},"num":…,"den":…}]}`
/// with terms in display order; numerators beyond `i64` become strings.
pub fn series(s: &TruncSeries) -> Value {
    let coeffs: Vec<Value> = s
        .sorted_terms()
        .into_iter()
        .map(|(e, c)| {
            let exps: Map<String, Value> = s
                .vars()
                .iter()
                .zip(e)
                .filter(|(_, &k)| k != 0)
                .map(|(v, &k)| (v.clone(), json!(k)))
                .collect();
            json!({"exps": exps, "num": big(c.numer()), "den": big(c.denom())})
        })
        .collect();
    json!({
        "order": s.order(),
        "vars": s.vars(),
        "weights": s.weights(),
        "coeffs": coeffs,
    })
}

pub fn curve_class(c: &CurveClass) -> Value {
    json!({"n": c.n, "beta": c.beta})
}

/// Anchors are emitted as `[col, row]`, the order of `x^col y^row`.
pub fn labeling(l: &HookLabeling) -> Value {
    let labels: Vec<Value> = l
        .hooks()
        .iter()
        .enumerate()
        .map(|(h, hook)| {
            json!({
                "leg": hook.leg,
                "anchor": [hook.anchor.1, hook.anchor.0],
                "by_color": l.by_color(h),
            })
        })
        .collect();
    let d = degrees(l);
    json!({
        "target": multipartition(l.target()),
        "labels": labels,
        "degree": d,
        "curve_class": curve_class(&to_curve_class(&d)),
        "vdim": fixed_term_dim(l),
    })
}

/// Color-indexed term lists `V_0, …, V_{m-1}` plus the framing.
pub fn quiver_data(q: &QuiverData) -> Value {
    let reg = q.v(0).registry().clone();
    let framing: Vec<Value> = q.framing().iter().map(|w| exps_object(&reg, w, false)).collect();
    json!({
        "m": q.m(),
        "colors": q.colors().iter().map(character).collect::<Vec<_>>(),
        "framing": framing,
        "dim": q.dim(),
    })
}

pub fn sheaf(s: &SheafDescription) -> Value {
    let reg = VarRegistry::geometric();
    let columns: Vec<Value> = s
        .columns
        .iter()
        .map(|col| {
            let rods: Vec<Value> = col
                .rods
                .iter()
                .map(|r| {
                    json!({
                        "level": r.level,
                        "direction": match r.direction {
                            Direction::Leftward => "left",
                            Direction::Rightward => "right",
                        },
                        "generator": r.generator,
                        "curves": [r.rod.start, r.rod.end],
                        "degrees": r.rod.degrees,
                        "linearization": exps_object(&reg, &r.rod.linearization, false),
                    })
                })
                .collect();
            json!({
                "leg": col.model.leg,
                "anchor": [col.model.anchor.1, col.model.anchor.0],
                "e": col.model.e,
                "rods": rods,
            })
        })
        .collect();
    json!({"m": s.m, "legs": multipartition(&s.legs), "columns": columns})
}

pub fn crc(c: &CrcOutcome) -> Value {
    json!({
        "sign": c.sign,
        "exps": c.exps,
        "monomial": c.monomial_string(),
        "holds": c.holds,
    })
}

pub fn report(r: &Report) -> Value {
    json!({
        "id": r.id,
        "title": r.title,
        "cases": r.cases,
        "passed": r.passed(),
        "failure": r.failure,
    })
}
