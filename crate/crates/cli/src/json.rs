//! JSON encodings of fans, modules, ring descriptors and results.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use toric::cohomology::{ModuleDescriptor, MonomialModule, Summand};
use toric::cox::{CoxGrading, MonomialIdeal};
use toric::fan_scheme::{Dim, Fan, RingDescriptor, Tri};
use toric::lattice::{FinAbGroup, GroupElement, Index, IntMatrix};
use toric::{Result, ToricError};

const SAFE: i64 = 1 << 53;

fn invalid(msg: impl Into<String>) -> ToricError {
    ToricError::InvalidInput(msg.into())
}

/// Integers beyond 2^53 travel as `{"format": "bigint-string", "value": "..."}`.
pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) if v.abs() <= SAFE => json!(v),
        _ => json!({"format": "bigint-string", "value": x.to_string()}),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.row_vectors().iter().map(|r| ints(r)).collect())
}

pub fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| invalid(format!("{n} is not an integer"))),
        Value::String(s) => s.parse().map_err(|_| invalid(format!("'{s}' is not an integer"))),
        Value::Object(o) if o.get("format") == Some(&json!("bigint-string")) => match o.get("value")
        {
            Some(Value::String(s)) => s.parse().map_err(|_| invalid(format!("'{s}' is not an integer"))),
            _ => Err(invalid("bigint-string without a string value")),
        },
        other => Err(invalid(format!("expected an integer, found {other}"))),
    }
}

pub fn parse_small(v: &Value) -> Result<i64> {
    parse_int(v)?
        .to_i64()
        .ok_or_else(|| invalid(format!("{v} is too large")))
}

fn parse_index(v: &Value) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| invalid(format!("expected an index, found {v}")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| invalid(format!("{what} must be an array")))
}

pub fn array_of<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    array(v, what)
}

pub fn parse_int_vec(v: &Value, what: &str) -> Result<Vec<BigInt>> {
    array(v, what)?.iter().map(parse_int).collect()
}

pub fn parse_small_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    array(v, what)?.iter().map(parse_small).collect()
}

/// `{"ambient_rank": n, "rays": [[..]], "maximal_cones": [[..]]}`.
pub fn parse_fan(v: &Value) -> Result<Fan> {
    let obj = v.as_object().ok_or_else(|| invalid("fan must be an object"))?;
    for key in obj.keys() {
        if !["ambient_rank", "rays", "maximal_cones"].contains(&key.as_str()) {
            return Err(invalid(format!("unknown fan field '{key}'")));
        }
    }
    let n = obj
        .get("ambient_rank")
        .and_then(Value::as_u64)
        .ok_or_else(|| invalid("fan needs a nonnegative integer ambient_rank"))? as usize;
    let rays = array(obj.get("rays").unwrap_or(&json!([])), "rays")?
        .iter()
        .map(|r| parse_int_vec(r, "ray"))
        .collect::<Result<Vec<_>>>()?;
    let cones = array(
        obj.get("maximal_cones")
            .ok_or_else(|| invalid("fan needs maximal_cones"))?,
        "maximal_cones",
    )?
    .iter()
    .map(|c| array(c, "cone")?.iter().map(parse_index).collect::<Result<Vec<_>>>())
    .collect::<Result<Vec<_>>>()?;
    Fan::from_maximal_cones(n, &rays, &cones)
}

pub fn fan(f: &Fan) -> Value {
    json!({
        "ambient_rank": f.ambient_rank(),
        "rays": f.rays().iter().map(|r| ints(r)).collect::<Vec<_>>(),
        "maximal_cones": f.maximal_cones().iter().map(|&m| f.cone(m).rays.clone()).collect::<Vec<_>>(),
    })
}

fn parse_tri(v: Option<&Value>, key: &str) -> Result<Tri> {
    match v {
        None | Some(Value::Null) => Ok(Tri::Unknown),
        Some(Value::Bool(b)) => Ok(Tri::from(*b)),
        Some(Value::String(s)) if s == "unknown" => Ok(Tri::Unknown),
        Some(Value::String(s)) if s == "true" => Ok(Tri::True),
        Some(Value::String(s)) if s == "false" => Ok(Tri::False),
        Some(other) => Err(invalid(format!("{key}: expected true, false or \"unknown\", found {other}"))),
    }
}

fn parse_count(v: Option<&Value>, key: &str) -> Result<Option<u64>> {
    match v {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) if s == "unknown" => Ok(None),
        Some(Value::Number(n)) => n
            .as_u64()
            .map(Some)
            .ok_or_else(|| invalid(format!("{key} must be a nonnegative integer"))),
        Some(other) => Err(invalid(format!("{key}: unexpected {other}"))),
    }
}

const RING_FLAGS: [&str; 9] = [
    "is_zero",
    "reduced",
    "connected",
    "normal",
    "irreducible",
    "integral",
    "noetherian",
    "artinian",
    "equidimensional",
];

/// A ring descriptor object, or one of the presets `ZZ`, `field`, `zero`, `unknown`.
pub fn parse_ring(v: &Value) -> Result<RingDescriptor> {
    if let Value::String(s) = v {
        return match s.as_str() {
            "ZZ" | "Z" | "integers" => Ok(RingDescriptor::integers()),
            "QQ" | "field" => Ok(RingDescriptor::field()),
            "zero" => Ok(RingDescriptor::zero_ring()),
            "unknown" => Ok(RingDescriptor::unknown()),
            _ => Err(invalid(format!("unknown ring preset '{s}'"))),
        };
    }
    let obj = v
        .as_object()
        .ok_or_else(|| invalid("ring descriptor must be an object or a preset name"))?;
    for key in obj.keys() {
        if !RING_FLAGS.contains(&key.as_str()) && key != "dim" && key != "minimal_prime_count" {
            return Err(invalid(format!("unknown ring descriptor field '{key}'")));
        }
    }
    let t = |k: &str| parse_tri(obj.get(k), k);
    RingDescriptor {
        is_zero: t("is_zero")?,
        reduced: t("reduced")?,
        connected: t("connected")?,
        normal: t("normal")?,
        irreducible: t("irreducible")?,
        integral: t("integral")?,
        noetherian: t("noetherian")?,
        artinian: t("artinian")?,
        equidimensional: t("equidimensional")?,
        dim: parse_count(obj.get("dim"), "dim")?,
        minimal_prime_count: parse_count(obj.get("minimal_prime_count"), "minimal_prime_count")?,
    }
    .normalized()
}

pub fn tri(t: Tri) -> Value {
    match t {
        Tri::True => json!(true),
        Tri::False => json!(false),
        Tri::Unknown => json!("unknown"),
    }
}

pub fn dim(d: Dim) -> Value {
    match d {
        Dim::Value(v) => json!(v),
        Dim::Unknown => json!("unknown"),
        Dim::Empty => json!("empty"),
    }
}

pub fn group(g: &FinAbGroup) -> Value {
    json!({"free_rank": g.free_rank(), "torsion": ints(g.torsion())})
}

pub fn element(e: &GroupElement) -> Value {
    ints(&e.coordinates())
}

pub fn index(i: &Index) -> Value {
    match i {
        Index::Finite(k) => int(k),
        Index::Infinite => json!("infinite"),
    }
}

pub fn descriptor(d: &ModuleDescriptor) -> Value {
    json!({"rank": d.rank, "torsion": ints(&d.torsion)})
}

pub fn descriptors(ds: &[ModuleDescriptor]) -> Value {
    Value::Array(ds.iter().map(descriptor).collect())
}

/// Coordinates of a class-group element (free first, then torsion).
pub fn parse_element(g: &CoxGrading, coords: &[BigInt]) -> Result<GroupElement> {
    let a = g.class_group();
    a.element_from_coordinates(coords).ok_or_else(|| {
        invalid(format!(
            "degree has {} coordinates, but the class group {a} needs {}",
            coords.len(),
            a.free_rank() + a.torsion().len()
        ))
    })
}

pub fn parse_ideal(v: &Value, nvars: usize) -> Result<MonomialIdeal> {
    let gens = match v {
        Value::Object(o) => o
            .get("generators")
            .ok_or_else(|| invalid("ideal object needs generators"))?,
        other => other,
    };
    let gens = array(gens, "ideal generators")?
        .iter()
        .map(|g| parse_small_vec(g, "monomial"))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(nvars, gens)
}

pub fn ideal(i: &MonomialIdeal) -> Value {
    json!(i.generators())
}

/// `{"summands": [{"shift": [..], "annihilator": [[..]]}]}`; `shift_divisor` (a vector
/// over the rays) may replace `shift`, and a missing shift means degree 0.
pub fn parse_module(v: &Value, g: &CoxGrading) -> Result<MonomialModule> {
    let obj = v.as_object().ok_or_else(|| invalid("module must be an object"))?;
    let r = g.ray_count();
    let summands = array(
        obj.get("summands").ok_or_else(|| invalid("module needs summands"))?,
        "summands",
    )?;
    let mut out = Vec::new();
    for s in summands {
        let so = s.as_object().ok_or_else(|| invalid("summand must be an object"))?;
        for key in so.keys() {
            if !["shift", "shift_divisor", "annihilator"].contains(&key.as_str()) {
                return Err(invalid(format!("unknown summand field '{key}'")));
            }
        }
        let shift = match (so.get("shift"), so.get("shift_divisor")) {
            (Some(_), Some(_)) => return Err(invalid("give shift or shift_divisor, not both")),
            (Some(s), None) => parse_element(g, &parse_int_vec(s, "shift")?)?,
            (None, Some(d)) => {
                let d = parse_int_vec(d, "shift_divisor")?;
                if d.len() != r {
                    return Err(invalid(format!("shift_divisor needs {r} entries")));
                }
                g.degree_of(&d)
            }
            (None, None) => g.class_group().zero(),
        };
        let annihilator = match so.get("annihilator") {
            None => MonomialIdeal::zero(r),
            Some(a) => parse_ideal(a, r)?,
        };
        out.push(Summand { shift, annihilator });
    }
    Ok(MonomialModule { summands: out })
}

/// Serializes with sorted keys and a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

pub fn error(code: &str, detail: &str) -> Value {
    let mut m = Map::new();
    m.insert("error".into(), json!(code));
    m.insert("detail".into(), json!(detail));
    Value::Object(m)
}
