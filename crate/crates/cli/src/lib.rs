//! The `toric` command line: reads fans, modules and ring descriptors as JSON and prints
//! one JSON document per invocation.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid input, 3 a mathematical
//! precondition does not hold.

pub mod catalog;
pub mod json;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use toric::cohomology::{saturate, BaseRing, CohomologyContext, MonomialModule};
use toric::cox::{
    chart_degree_zero, compare_chart_iso, cox_grading, irrelevant_ideal, restriction_exponent,
    CoxGrading, SubgroupB,
};
use toric::fan_scheme::{chart_presentation, scheme_property_report, Fan};
use toric::lattice::GroupElement;
use toric::picard::{picard_group, verify_pic_properties};
use toric::{Result, ToricError};

#[derive(Parser, Debug)]
#[command(name = "toric", version, about = "Invariants of toric schemes from lattice fans")]
struct Cli {
    /// Also write the JSON document to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FanArg {
    /// Fan JSON: a path, or an inline document.
    #[arg(long)]
    fan: String,
}

#[derive(Args, Debug)]
struct SubgroupArg {
    /// Generators of B as `c1,c2;c1,c2;...` in class-group coordinates (default B = A).
    #[arg(long, allow_hyphen_values = true)]
    subgroup: Option<String>,
}

#[derive(Args, Debug)]
struct BaseArgs {
    /// QQ, ZZ, F<p> or Fp (with --prime).
    #[arg(long, default_value = "QQ")]
    base: String,
    #[arg(long)]
    prime: Option<u64>,
    /// Box radius for the lattice points of M (default: derived from the degree, or
    /// TORIC_BOX_RADIUS).
    #[arg(long = "box")]
    radius: Option<i64>,
}

#[derive(Args, Debug)]
struct ModuleArgs {
    #[command(flatten)]
    fan: FanArg,
    /// Module JSON: a path, or an inline document.
    #[arg(long)]
    module: String,
    #[command(flatten)]
    subgroup: SubgroupArg,
    #[command(flatten)]
    base: BaseArgs,
}

#[derive(Args, Debug)]
struct DegreeArgs {
    /// A degree in class-group coordinates, e.g. `-3` or `1,0`.
    #[arg(long, allow_hyphen_values = true)]
    degree: Option<String>,
    /// A degree given as a divisor over the rays, e.g. `1,0,0`.
    #[arg(long, allow_hyphen_values = true)]
    degree_divisor: Option<String>,
    /// Inclusive ranges `a..b`, one per free coordinate; torsion is enumerated.
    #[arg(long, allow_hyphen_values = true)]
    degrees: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a fan and print its cones.
    FanValidate(FanArg),
    /// Completeness, fullness and simpliciality.
    FanProps(FanArg),
    /// Scheme-theoretic properties over a described base ring.
    SchemeReport {
        #[command(flatten)]
        fan: FanArg,
        /// Ring descriptor JSON (path or inline) or a preset: ZZ, field, zero, unknown.
        #[arg(long, default_value = "unknown")]
        ring: String,
    },
    /// The class group A, the map c and the ray degrees.
    CoxGrading(FanArg),
    /// Minimal generators of the irrelevant ideal.
    CoxIrrelevant {
        #[command(flatten)]
        fan: FanArg,
        #[command(flatten)]
        subgroup: SubgroupArg,
    },
    /// Big/small flags of a subgroup B and its restriction exponent.
    CoxSubgroup {
        #[command(flatten)]
        fan: FanArg,
        /// Generators as `c1,c2;c1,c2;...`.
        #[arg(long, allow_hyphen_values = true)]
        gens: String,
    },
    /// Presentation of an affine chart and its degree-zero Cox monoid.
    Chart {
        #[command(flatten)]
        fan: FanArg,
        /// Index of the cone in the sorted cone list.
        #[arg(long)]
        cone: Option<usize>,
        /// Ray indices of the cone, e.g. `0,1`.
        #[arg(long)]
        rays: Option<String>,
        #[arg(long, default_value_t = toric::fan_scheme::DEFAULT_DEGREE_BOUND)]
        degree_bound: u32,
    },
    /// The Picard group as a subgroup of A.
    Pic(FanArg),
    /// Čech cohomology of a monomial module in one degree, or a finiteness probe over
    /// a range of degrees.
    Cohomology {
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Local cohomology with respect to the irrelevant ideal, and the torsion piece.
    Localcoh {
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Compare sheaf and local cohomology degree by degree.
    Sgcheck {
        #[command(flatten)]
        module: ModuleArgs,
        #[command(flatten)]
        degree: DegreeArgs,
    },
    /// Saturate a monomial ideal by the irrelevant ideal (or by --by).
    Saturate {
        #[command(flatten)]
        fan: FanArg,
        /// Ideal JSON: `[[exponents], ...]` or `{"generators": ...}`.
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        by: Option<String>,
    },
    /// Run the fixture catalog against its recorded expectations.
    CatalogRun {
        /// Directory of catalog JSON files (default: the built-in catalog).
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Outcome of one invocation.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn invalid(msg: impl Into<String>) -> ToricError {
    ToricError::InvalidInput(msg.into())
}

/// Reads a JSON argument: inline when it looks like JSON, otherwise a file path.
pub fn load(arg: &str) -> Result<Value> {
    let t = arg.trim_start();
    let text = if t.starts_with('{') || t.starts_with('[') || t.starts_with('"') {
        arg.to_string()
    } else {
        fs::read_to_string(Path::new(arg))
            .map_err(|e| invalid(format!("cannot read {arg}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| invalid(format!("{arg}: {e}")))
}

fn load_fan(arg: &FanArg) -> Result<Fan> {
    json::parse_fan(&load(&arg.fan)?)
}

fn parse_coords(s: &str) -> Result<Vec<BigInt>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| invalid(format!("'{x}' is not an integer"))))
        .collect()
}

fn parse_subgroup(g: &CoxGrading, s: &str) -> Result<Vec<GroupElement>> {
    s.split(';')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| json::parse_element(g, &parse_coords(x)?))
        .collect()
}

fn subgroup_generators(g: &CoxGrading, arg: &SubgroupArg) -> Result<Option<Vec<GroupElement>>> {
    arg.subgroup.as_deref().map(|s| parse_subgroup(g, s)).transpose()
}

fn parse_base(args: &BaseArgs) -> Result<BaseRing> {
    BaseRing::parse(&args.base, args.prime)
}

fn radius(args: &BaseArgs) -> Result<Option<i64>> {
    if args.radius.is_some() {
        return Ok(args.radius);
    }
    match std::env::var("TORIC_BOX_RADIUS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| invalid(format!("TORIC_BOX_RADIUS='{v}' is not an integer"))),
        Err(_) => Ok(None),
    }
}

/// Expands `a..b,c..d` over the free coordinates, with every torsion residue.
pub fn degree_range(g: &CoxGrading, s: &str) -> Result<Vec<GroupElement>> {
    let a = g.class_group();
    let ranges: Vec<(i64, i64)> = s
        .split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            let part = part.trim();
            let (lo, hi) = part.split_once("..").unwrap_or((part, part));
            let lo: i64 = lo.trim().parse().map_err(|_| invalid(format!("bad range '{part}'")))?;
            let hi: i64 = hi.trim().parse().map_err(|_| invalid(format!("bad range '{part}'")))?;
            if lo > hi {
                return Err(invalid(format!("empty range '{part}'")));
            }
            Ok((lo, hi))
        })
        .collect::<Result<_>>()?;
    if ranges.len() != a.free_rank() {
        return Err(invalid(format!(
            "{} ranges given, but the class group {a} has free rank {}",
            ranges.len(),
            a.free_rank()
        )));
    }
    let mut axes: Vec<Vec<BigInt>> = ranges
        .iter()
        .map(|&(lo, hi)| (lo..=hi).map(BigInt::from).collect())
        .collect();
    for d in a.torsion() {
        let d = d
            .to_i64()
            .ok_or_else(|| invalid("torsion coefficient too large to enumerate"))?;
        axes.push((0..d).map(BigInt::from).collect());
    }
    let mut out: Vec<Vec<BigInt>> = vec![Vec::new()];
    for axis in &axes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                axis.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out.iter().map(|c| json::parse_element(g, c)).collect()
}

enum Degrees {
    One(GroupElement),
    Many(Vec<GroupElement>),
}

fn parse_degrees(g: &CoxGrading, d: &DegreeArgs) -> Result<Degrees> {
    match (&d.degree, &d.degree_divisor, &d.degrees) {
        (Some(s), None, None) => Ok(Degrees::One(json::parse_element(g, &parse_coords(s)?)?)),
        (None, Some(s), None) => {
            let v = parse_coords(s)?;
            if v.len() != g.ray_count() {
                return Err(invalid(format!("--degree-divisor needs {} entries", g.ray_count())));
            }
            Ok(Degrees::One(g.degree_of(&v)))
        }
        (None, None, Some(s)) => Ok(Degrees::Many(degree_range(g, s)?)),
        (None, None, None) => Err(invalid("give --degree, --degree-divisor or --degrees")),
        _ => Err(invalid("give only one of --degree, --degree-divisor, --degrees")),
    }
}

struct ModuleSetup {
    ctx: CohomologyContext,
    module: MonomialModule,
    base: BaseRing,
    radius: Option<i64>,
}

fn module_setup(m: &ModuleArgs) -> Result<ModuleSetup> {
    let f = load_fan(&m.fan)?;
    let base = parse_base(&m.base)?;
    let radius = radius(&m.base)?;
    let module_json = load(&m.module)?;
    let g = cox_grading(&f);
    let b = subgroup_generators(&g, &m.subgroup)?;
    let ctx = CohomologyContext::new(&f, b)?;
    let module = json::parse_module(&module_json, ctx.grading())?;
    Ok(ModuleSetup {
        ctx,
        module,
        base,
        radius,
    })
}

fn fan_validate(arg: &FanArg) -> Result<Value> {
    let f = load_fan(arg)?;
    let cones: Vec<Value> = f
        .cones()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            json!({
                "index": i,
                "rays": c.rays,
                "dim": c.dim(),
                "faces": f.faces_of(i),
            })
        })
        .collect();
    Ok(json!({
        "valid": true,
        "fan": json::fan(&f),
        "cone_count": f.cones().len(),
        "cones": cones,
    }))
}

fn fan_props(arg: &FanArg) -> Result<Value> {
    let f = load_fan(arg)?;
    Ok(json!({
        "complete": f.is_complete(),
        "full": f.is_full(),
        "simplicial": f.is_simplicial(),
    }))
}

fn scheme_report(fan: &FanArg, ring: &str) -> Result<Value> {
    let f = load_fan(fan)?;
    let ring_value = if ring.trim_start().starts_with('{') || Path::new(ring).is_file() {
        load(ring)?
    } else {
        Value::String(ring.to_string())
    };
    let r = json::parse_ring(&ring_value)?;
    let rep = scheme_property_report(&f, &r);
    let mut obj = serde_json::Map::new();
    for (name, t) in rep.flags() {
        obj.insert(name.into(), json::tri(t));
    }
    obj.insert("dim_lower".into(), json::dim(rep.dim_lower));
    obj.insert("dim_upper".into(), json::dim(rep.dim_upper));
    obj.insert(
        "irreducible_component_count".into(),
        rep.irreducible_component_count
            .map_or(json!("unknown"), |c| json!(c)),
    );
    Ok(Value::Object(obj))
}

fn grading_json(g: &CoxGrading) -> Value {
    json!({
        "class_group": json::group(g.class_group()),
        "c_matrix": json::matrix(g.c_matrix()),
        "degree_map": json::matrix(g.class_group().presentation_map()),
        "ray_degrees": g.ray_degrees().iter().map(json::element).collect::<Vec<_>>(),
    })
}

fn cox_irrelevant(fan: &FanArg, sub: &SubgroupArg) -> Result<Value> {
    let f = load_fan(fan)?;
    let g = cox_grading(&f);
    let ideal = irrelevant_ideal(&f);
    let mut out = json!({
        "generators": json::ideal(&ideal),
        "degrees": ideal.generators().iter().map(|m| json::element(&g.degree(m))).collect::<Vec<_>>(),
    });
    if let Some(b) = subgroup_generators(&g, sub)? {
        let b = SubgroupB::new(&f, &g, b);
        let m = restriction_exponent(&b, &f, &g)?;
        let gens: Vec<Vec<i64>> = ideal
            .generators()
            .iter()
            .map(|x| x.iter().map(|e| e * m as i64).collect())
            .collect();
        out["restriction_exponent"] = json!(m);
        out["restricted_generators"] = json!(gens);
    }
    Ok(out)
}

fn cox_subgroup(fan: &FanArg, gens: &str) -> Result<Value> {
    let f = load_fan(fan)?;
    let g = cox_grading(&f);
    let b = SubgroupB::new(&f, &g, parse_subgroup(&g, gens)?);
    let m = match restriction_exponent(&b, &f, &g) {
        Ok(m) => json!(m),
        Err(ToricError::NotBig) => Value::Null,
        Err(e) => return Err(e),
    };
    Ok(json!({
        "big": b.big,
        "small": b.small,
        "index": json::index(&b.index),
        "restriction_exponent": m,
        "generators": b.generators.iter().map(json::element).collect::<Vec<_>>(),
    }))
}

fn chart(fan: &FanArg, cone: Option<usize>, rays: Option<&str>, bound: u32) -> Result<Value> {
    let f = load_fan(fan)?;
    let idx = match (cone, rays) {
        (Some(i), None) if i < f.cones().len() => i,
        (Some(i), None) => return Err(invalid(format!("no cone with index {i}"))),
        (None, Some(r)) => {
            let rays: Vec<usize> = r
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| invalid(format!("bad ray index '{x}'"))))
                .collect::<Result<_>>()?;
            f.find_cone(&rays)
                .ok_or_else(|| invalid(format!("no cone with rays {rays:?}")))?
        }
        _ => return Err(invalid("give exactly one of --cone and --rays")),
    };
    let p = chart_presentation(&f, idx, bound);
    let g = cox_grading(&f);
    let zero = chart_degree_zero(&f, &g, idx);
    let relations: Vec<Value> = p
        .binomial_relations
        .iter()
        .map(|r| json!({"lhs": r.lhs, "rhs": r.rhs, "unit_shift": json::ints(&r.unit_shift)}))
        .collect();
    Ok(json!({
        "cone": idx,
        "rays": f.cone(idx).rays,
        "monoid_basis": p.monoid_basis.elements.iter().map(|e| json::ints(e)).collect::<Vec<_>>(),
        "units": p.units.iter().map(|e| json::ints(e)).collect::<Vec<_>>(),
        "unit_rank": p.unit_rank,
        "relations": relations,
        "degree_bound": bound,
        "degree_zero": {
            "elements": zero.elements.iter().map(|e| json::ints(e)).collect::<Vec<_>>(),
            "units": zero.units.iter().map(|e| json::ints(e)).collect::<Vec<_>>(),
        },
        "chart_iso": compare_chart_iso(&f, &g, idx),
    }))
}

fn pic(fan: &FanArg) -> Result<Value> {
    let f = load_fan(fan)?;
    let g = cox_grading(&f);
    let p = picard_group(&f, &g)?;
    let checks = verify_pic_properties(&f, &g, &p);
    Ok(json!({
        "abstract": json::group(&p.abstract_type),
        "generators_in_A": p.generators.iter().map(json::element).collect::<Vec<_>>(),
        "index_in_A": json::index(&p.index),
        "small": checks.small,
        "big": checks.big,
        "big_asserted": checks.big_asserted,
        "properties_hold": checks.passed(),
    }))
}

fn cohomology(m: &ModuleArgs, d: &DegreeArgs) -> Result<Value> {
    let s = module_setup(m)?;
    match parse_degrees(s.ctx.grading(), d)? {
        Degrees::One(alpha) => {
            let rep = s.ctx.report(&s.module, &alpha, s.base, s.radius)?;
            Ok(json!({
                "degree": json::element(&alpha),
                "base": s.base.to_string(),
                "box_radius": rep.radius,
                "H": json::descriptors(&rep.cech),
                "module_piece": json::descriptor(&rep.module_piece),
            }))
        }
        Degrees::Many(ds) => {
            let rep = s.ctx.finiteness_probe(&s.module, &ds, s.base, s.radius)?;
            let pieces: Vec<Value> = rep
                .pieces
                .iter()
                .map(|p| {
                    json!({
                        "degree": json::element(&p.degree),
                        "box_radius": p.radius,
                        "stable": p.stable,
                        "H": p.cech.as_deref().map_or(Value::Null, json::descriptors),
                    })
                })
                .collect();
            Ok(json!({
                "base": s.base.to_string(),
                "complete": rep.complete,
                "warning": rep.warning,
                "finiteness_asserted": rep.asserted,
                "all_stable": rep.all_stable,
                "pieces": pieces,
            }))
        }
    }
}

fn localcoh(m: &ModuleArgs, d: &DegreeArgs) -> Result<Value> {
    let s = module_setup(m)?;
    let alpha = match parse_degrees(s.ctx.grading(), d)? {
        Degrees::One(a) => a,
        Degrees::Many(_) => return Err(invalid("localcoh takes a single degree")),
    };
    let rep = s.ctx.report(&s.module, &alpha, s.base, s.radius)?;
    let pieces = s.ctx.torsion_functor(&s.module, &alpha, s.radius)?;
    let monomials: Vec<&Vec<i64>> = pieces.iter().flat_map(|p| &p.monomials).collect();
    Ok(json!({
        "degree": json::element(&alpha),
        "base": s.base.to_string(),
        "box_radius": rep.radius,
        "local": json::descriptors(&rep.local),
        "torsion": json::descriptor(&rep.torsion),
        "torsion_monomials": monomials,
        "irrelevant_generators": json::ideal(&s.ctx.irrelevant()),
    }))
}

fn sgcheck(m: &ModuleArgs, d: &DegreeArgs) -> Result<(Value, bool)> {
    let s = module_setup(m)?;
    let degrees = match parse_degrees(s.ctx.grading(), d)? {
        Degrees::One(a) => vec![a],
        Degrees::Many(ds) => ds,
    };
    let rep = s
        .ctx
        .serre_grothendieck_check(&s.module, &degrees, s.base, s.radius)?;
    let per: Vec<Value> = rep
        .degrees
        .iter()
        .map(|r| {
            json!({
                "degree": json::element(&r.degree),
                "torsion": json::descriptor(&r.torsion),
                "module_piece": json::descriptor(&r.module_piece),
                "sections": json::descriptor(&r.sections),
                "first_local": json::descriptor(&r.first_local),
                "exact": r.exact,
                "isomorphisms": r.isomorphisms.iter().map(|(i, ok)| json!({"i": i, "holds": ok})).collect::<Vec<_>>(),
                "pass": r.pass,
            })
        })
        .collect();
    Ok((
        json!({"base": s.base.to_string(), "all_pass": rep.all_pass, "degrees": per}),
        rep.all_pass,
    ))
}

fn saturate_cmd(fan: &FanArg, ideal: &str, by: Option<&str>) -> Result<Value> {
    let f = load_fan(fan)?;
    let r = f.rays().len();
    let a = json::parse_ideal(&load(ideal)?, r)?;
    let i = match by {
        Some(b) => json::parse_ideal(&load(b)?, r)?,
        None => irrelevant_ideal(&f),
    };
    let sat = saturate(&a, &i);
    Ok(json!({
        "ideal": json::ideal(&a),
        "by": json::ideal(&i),
        "saturation": json::ideal(&sat),
        "already_saturated": sat == a,
    }))
}

fn dispatch(cli: &Cli) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, 0));
    match &cli.command {
        Command::FanValidate(a) => ok(fan_validate(a)?),
        Command::FanProps(a) => ok(fan_props(a)?),
        Command::SchemeReport { fan, ring } => ok(scheme_report(fan, ring)?),
        Command::CoxGrading(a) => ok(grading_json(&cox_grading(&load_fan(a)?))),
        Command::CoxIrrelevant { fan, subgroup } => ok(cox_irrelevant(fan, subgroup)?),
        Command::CoxSubgroup { fan, gens } => ok(cox_subgroup(fan, gens)?),
        Command::Chart {
            fan,
            cone,
            rays,
            degree_bound,
        } => ok(chart(fan, *cone, rays.as_deref(), *degree_bound)?),
        Command::Pic(a) => ok(pic(a)?),
        Command::Cohomology { module, degree } => ok(cohomology(module, degree)?),
        Command::Localcoh { module, degree } => ok(localcoh(module, degree)?),
        Command::Sgcheck { module, degree } => {
            let (v, pass) = sgcheck(module, degree)?;
            Ok((v, if pass { 0 } else { 1 }))
        }
        Command::Saturate { fan, ideal, by } => ok(saturate_cmd(fan, ideal, by.as_deref())?),
        Command::CatalogRun { dir } => catalog::run(dir.as_deref()),
    }
}

fn exit_code(e: &ToricError) -> i32 {
    if e.is_precondition() {
        3
    } else {
        2
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: 0,
                    stdout: e.to_string(),
                },
                _ => Outcome {
                    code: 2,
                    stdout: json::render(&json::error("INVALID_INPUT", e.to_string().trim())),
                },
            };
        }
    };
    let (value, code) = match dispatch(&cli) {
        Ok(r) => r,
        Err(e) => (json::error(e.code(), &e.to_string()), exit_code(&e)),
    };
    let stdout = json::render(&value);
    if let Some(path) = &cli.out {
        if let Err(e) = fs::write(path, &stdout) {
            let err = invalid(format!("cannot write {}: {e}", path.display()));
            return Outcome {
                code: 2,
                stdout: json::render(&json::error(err.code(), &err.to_string())),
            };
        }
    }
    Outcome { code, stdout }
}
