//! The fixture catalog: one JSON file per fan with recorded expectations, checked
//! key by key against fresh computations.
//!
//! An entry looks like `{"name": .., "fan": {..}, "expect": {..}}`. Recognized
//! expectation keys are `valid`, `complete`, `full`, `simplicial`, `class_group`,
//! `irrelevant_generators`, `chart_iso_all`, `picard_index`, `pic_properties`,
//! `scheme_reports`, `subgroups`, `cohomology`, `sgcheck`, `finiteness` and `saturate`.

use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};

use toric::cohomology::{BaseRing, CohomologyContext, MonomialModule};
use toric::cox::{
    compare_chart_iso, cox_grading, irrelevant_ideal, restriction_exponent, CoxGrading,
    SubgroupB,
};
use toric::fan_scheme::{scheme_property_report, Fan};
use toric::lattice::GroupElement;
use toric::picard::{picard_group, verify_pic_properties};
use toric::{Result, ToricError};

use crate::degree_range;
use crate::json as codec;

const BUILTIN: &[(&str, &str)] = &[
    ("a1.json", include_str!("../catalog/a1.json")),
    ("blowup_chart.json", include_str!("../catalog/blowup_chart.json")),
    ("cone_over_square.json", include_str!("../catalog/cone_over_square.json")),
    ("f1.json", include_str!("../catalog/f1.json")),
    ("interior_ray.json", include_str!("../catalog/interior_ray.json")),
    ("orthant.json", include_str!("../catalog/orthant.json")),
    ("p1.json", include_str!("../catalog/p1.json")),
    ("p112.json", include_str!("../catalog/p112.json")),
    ("p1xp1.json", include_str!("../catalog/p1xp1.json")),
    ("p2.json", include_str!("../catalog/p2.json")),
    ("single_ray.json", include_str!("../catalog/single_ray.json")),
];

fn invalid(msg: impl Into<String>) -> ToricError {
    ToricError::InvalidInput(msg.into())
}

struct Check {
    key: String,
    expected: Value,
    actual: Value,
}

impl Check {
    fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

fn error_value(e: &ToricError) -> Value {
    json!({"error": e.code()})
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Array(a) => {
            let mut a = a.clone();
            a.sort_by_key(|x| x.to_string());
            Value::Array(a)
        }
        other => other.clone(),
    }
}

fn field<'a>(obj: &'a Value, key: &str, ctx: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| invalid(format!("{ctx}: missing '{key}'")))
}

fn ray_degree(g: &CoxGrading, v: &Value) -> Result<GroupElement> {
    let d = codec::parse_int_vec(v, "degree_divisor")?;
    if d.len() != g.ray_count() {
        return Err(invalid(format!("degree_divisor needs {} entries", g.ray_count())));
    }
    Ok(g.degree_of(&d))
}

fn check_degree(g: &CoxGrading, check: &Value) -> Result<GroupElement> {
    match (check.get("degree"), check.get("degree_divisor")) {
        (Some(d), None) => codec::parse_element(g, &codec::parse_int_vec(d, "degree")?),
        (None, Some(d)) => ray_degree(g, d),
        _ => Err(invalid("give one of degree and degree_divisor")),
    }
}

fn base_of(check: &Value) -> Result<BaseRing> {
    let name = check.get("base").and_then(Value::as_str).unwrap_or("QQ");
    let prime = check.get("prime").and_then(Value::as_u64);
    BaseRing::parse(name, prime)
}

fn module_of(check: &Value, g: &CoxGrading) -> Result<MonomialModule> {
    codec::parse_module(field(check, "module", "module check")?, g)
}

fn radius_of(check: &Value) -> Option<i64> {
    check.get("box").and_then(Value::as_i64)
}

fn context(f: &Fan, g: &CoxGrading, check: &Value) -> Result<CohomologyContext> {
    let b = match check.get("subgroup_divisors") {
        None => None,
        Some(v) => Some(
            codec::array_of(v, "subgroup_divisors")?
                .iter()
                .map(|d| ray_degree(g, d))
                .collect::<Result<Vec<_>>>()?,
        ),
    };
    CohomologyContext::new(f, b)
}

fn cohomology_check(f: &Fan, g: &CoxGrading, check: &Value) -> Result<Value> {
    let ctx = context(f, g, check)?;
    let module = module_of(check, g)?;
    let alpha = check_degree(g, check)?;
    let h = ctx.cech_cohomology(&module, &alpha, base_of(check)?, radius_of(check))?;
    Ok(codec::descriptors(&h))
}

fn sgcheck(f: &Fan, g: &CoxGrading, check: &Value) -> Result<Value> {
    let ctx = context(f, g, check)?;
    let module = module_of(check, g)?;
    let range = field(check, "degrees", "sgcheck")?
        .as_str()
        .ok_or_else(|| invalid("degrees must be a string"))?;
    let degrees = degree_range(g, range)?;
    let rep = ctx.serre_grothendieck_check(&module, &degrees, base_of(check)?, radius_of(check))?;
    Ok(json!(rep.all_pass))
}

fn finiteness(f: &Fan, g: &CoxGrading, check: &Value) -> Result<Value> {
    let ctx = context(f, g, check)?;
    let module = match check.get("module") {
        Some(m) => codec::parse_module(m, g)?,
        None => MonomialModule::free(g.ray_count(), g.class_group().zero()),
    };
    let range = check.get("degrees").and_then(Value::as_str).unwrap_or("");
    let degrees = degree_range(g, range)?;
    let rep = ctx.finiteness_probe(&module, &degrees, base_of(check)?, radius_of(check))?;
    Ok(json!({"warning": rep.warning.is_some(), "all_stable": rep.all_stable}))
}

fn subgroup(f: &Fan, g: &CoxGrading, check: &Value) -> Result<Value> {
    let gens = codec::array_of(field(check, "gens_divisor", "subgroup")?, "gens_divisor")?
        .iter()
        .map(|d| ray_degree(g, d))
        .collect::<Result<Vec<_>>>()?;
    let b = SubgroupB::new(f, g, gens);
    let m = match restriction_exponent(&b, f, g) {
        Ok(m) => json!(m),
        Err(ToricError::NotBig) => Value::Null,
        Err(e) => return Err(e),
    };
    let mut out = Map::new();
    for key in ["big", "small", "restriction_exponent", "index"] {
        if check.get(key).is_some() {
            let v = match key {
                "big" => json!(b.big),
                "small" => json!(b.small),
                "index" => codec::index(&b.index),
                _ => m.clone(),
            };
            out.insert(key.into(), v);
        }
    }
    Ok(Value::Object(out))
}

fn scheme(f: &Fan, check: &Value) -> Result<Value> {
    let ring = codec::parse_ring(field(check, "ring", "scheme report")?)?;
    let rep = scheme_property_report(f, &ring);
    let expect = field(check, "expect", "scheme report")?
        .as_object()
        .ok_or_else(|| invalid("scheme report expect must be an object"))?;
    let mut all: Map<String, Value> = rep
        .flags()
        .into_iter()
        .map(|(k, t)| (k.to_string(), codec::tri(t)))
        .collect();
    all.insert("dim_lower".into(), codec::dim(rep.dim_lower));
    all.insert("dim_upper".into(), codec::dim(rep.dim_upper));
    let mut out = Map::new();
    for key in expect.keys() {
        out.insert(key.clone(), all.get(key).cloned().unwrap_or(Value::Null));
    }
    Ok(Value::Object(out))
}

fn saturation(f: &Fan, check: &Value) -> Result<Value> {
    let r = f.rays().len();
    let a = codec::parse_ideal(field(check, "ideal", "saturate")?, r)?;
    let by = match check.get("by") {
        Some(b) => codec::parse_ideal(b, r)?,
        None => irrelevant_ideal(f),
    };
    Ok(sorted(&codec::ideal(&a.saturate(&by))))
}

/// Expected value of a sub-check, with array-valued answers compared as sets.
fn expected_of(key: &str, check: &Value) -> Value {
    match key {
        "saturation" => sorted(&check["saturation"]),
        "scheme" => check["expect"].clone(),
        "subgroup" => {
            let mut out = Map::new();
            for k in ["big", "small", "restriction_exponent", "index"] {
                if let Some(v) = check.get(k) {
                    out.insert(k.into(), v.clone());
                }
            }
            Value::Object(out)
        }
        "H" => check["H"].clone(),
        "all_pass" => check.get("all_pass").cloned().unwrap_or(json!(true)),
        "finiteness" => json!({
            "warning": check.get("warning").cloned().unwrap_or(json!(false)),
            "all_stable": check.get("all_stable").cloned().unwrap_or(json!(true)),
        }),
        _ => Value::Null,
    }
}

fn list_checks<F>(
    checks: &mut Vec<Check>,
    name: &str,
    specs: &Value,
    kind: &str,
    mut compute: F,
) -> Result<()>
where
    F: FnMut(&Value) -> Result<Value>,
{
    let items: Vec<Value> = match specs {
        Value::Array(a) => a.clone(),
        other => vec![other.clone()],
    };
    for (i, check) in items.iter().enumerate() {
        let actual = compute(check).unwrap_or_else(|e| error_value(&e));
        checks.push(Check {
            key: format!("{name}[{i}]"),
            expected: expected_of(kind, check),
            actual,
        });
    }
    Ok(())
}

fn evaluate(entry: &Value) -> Result<(String, Vec<Check>)> {
    let name = entry
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| invalid("catalog entry needs a name"))?
        .to_string();
    let expect = field(entry, "expect", &name)?
        .as_object()
        .ok_or_else(|| invalid(format!("{name}: expect must be an object")))?;
    let mut checks = Vec::new();
    let fan = codec::parse_fan(field(entry, "fan", &name)?);
    let f = match fan {
        Ok(f) => f,
        Err(e @ ToricError::InvalidInput(_)) => return Err(invalid(format!("{name}: {e}"))),
        Err(e) => {
            for (key, expected) in expect {
                let actual = if key == "valid" { json!(e.code()) } else { error_value(&e) };
                checks.push(Check {
                    key: key.clone(),
                    expected: expected.clone(),
                    actual,
                });
            }
            return Ok((name, checks));
        }
    };
    let g = cox_grading(&f);
    for (key, expected) in expect {
        let simple = |actual: Value| Check {
            key: key.clone(),
            expected: expected.clone(),
            actual,
        };
        match key.as_str() {
            "valid" => checks.push(simple(json!(true))),
            "complete" => checks.push(simple(json!(f.is_complete()))),
            "full" => checks.push(simple(json!(f.is_full()))),
            "simplicial" => checks.push(simple(json!(f.is_simplicial()))),
            "class_group" => checks.push(simple(codec::group(g.class_group()))),
            "irrelevant_generators" => checks.push(Check {
                key: key.clone(),
                expected: sorted(expected),
                actual: sorted(&codec::ideal(&irrelevant_ideal(&f))),
            }),
            "chart_iso_all" => {
                let all = (0..f.cones().len()).all(|i| compare_chart_iso(&f, &g, i));
                checks.push(simple(json!(all)));
            }
            "picard_index" => {
                let actual = picard_group(&f, &g)
                    .map(|p| codec::index(&p.index))
                    .unwrap_or_else(|e| error_value(&e));
                checks.push(simple(actual));
            }
            "pic_properties" => {
                let actual = picard_group(&f, &g)
                    .map(|p| json!(verify_pic_properties(&f, &g, &p).passed()))
                    .unwrap_or_else(|e| error_value(&e));
                checks.push(simple(actual));
            }
            "scheme_reports" => list_checks(&mut checks, key, expected, "scheme", |s| scheme(&f, s))?,
            "subgroups" => {
                list_checks(&mut checks, key, expected, "subgroup", |s| subgroup(&f, &g, s))?
            }
            "cohomology" => {
                list_checks(&mut checks, key, expected, "H", |s| cohomology_check(&f, &g, s))?
            }
            "sgcheck" => list_checks(&mut checks, key, expected, "all_pass", |s| sgcheck(&f, &g, s))?,
            "finiteness" => {
                list_checks(&mut checks, key, expected, "finiteness", |s| finiteness(&f, &g, s))?
            }
            "saturate" => {
                list_checks(&mut checks, key, expected, "saturation", |s| saturation(&f, s))?
            }
            other => return Err(invalid(format!("{name}: unknown expectation '{other}'"))),
        }
    }
    Ok((name, checks))
}

fn load_dir(dir: &Path) -> Result<Vec<(String, String)>> {
    let entries = fs::read_dir(dir)
        .map_err(|e| invalid(format!("cannot read catalog dir {}: {e}", dir.display())))?;
    let mut files: Vec<(String, String)> = Vec::new();
    for e in entries {
        let path = e.map_err(|e| invalid(e.to_string()))?.path();
        if path.extension().and_then(|x| x.to_str()) != Some("json") {
            continue;
        }
        let text = fs::read_to_string(&path)
            .map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))?;
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        files.push((name, text));
    }
    files.sort();
    Ok(files)
}

/// Runs every catalog file; the exit code is 1 when any check fails.
pub fn run(dir: Option<&Path>) -> Result<(Value, i32)> {
    let files: Vec<(String, String)> = match dir {
        Some(d) => load_dir(d)?,
        None => BUILTIN
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect(),
    };
    if files.is_empty() {
        return Err(invalid("the catalog is empty"));
    }
    let mut entries = Vec::new();
    let (mut total, mut failed) = (0usize, 0usize);
    for (file, text) in &files {
        let entry: Value =
            serde_json::from_str(text).map_err(|e| invalid(format!("{file}: {e}")))?;
        let (name, checks) = evaluate(&entry)?;
        let failures: Vec<Value> = checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| json!({"key": c.key, "expected": c.expected, "actual": c.actual}))
            .collect();
        total += checks.len();
        failed += failures.len();
        entries.push(json!({
            "file": file,
            "name": name,
            "checks": checks.len(),
            "failures": failures,
        }));
    }
    let all_pass = failed == 0;
    Ok((
        json!({
            "all_pass": all_pass,
            "checks": total,
            "failed": failed,
            "entries": entries,
        }),
        if all_pass { 0 } else { 1 },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_ignores_order() {
        assert_eq!(sorted(&json!([[1, 0], [0, 1]])), sorted(&json!([[0, 1], [1, 0]])));
    }

    #[test]
    fn unknown_expectation_is_rejected() {
        let e = json!({"name": "x", "fan": {"ambient_rank": 1, "rays": [[1]], "maximal_cones": [[0]]},
                       "expect": {"colour": 1}});
        assert!(evaluate(&e).is_err());
    }

    #[test]
    fn divisor_degrees_parse() {
        let g = cox_grading(&toric::catalog::p1());
        let d = ray_degree(&g, &json!([1, 0])).unwrap();
        assert_eq!(g.class_group().free_rank(), 1);
        assert!(!d.is_zero());
    }
}
