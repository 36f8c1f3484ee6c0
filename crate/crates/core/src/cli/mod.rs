//! Command-line front end. `run` takes the argument list and returns the exit
//! code with the text destined for stdout; `--out` and `--dot` files are
//! written as side effects.

mod catalog;
mod suites;

pub use catalog::{catalog_entries, check_catalog, CatalogEntry, CatalogReport, DiagramData, PvData, SubspaceFigure};
pub use suites::{run_suite, Suite, SuiteReport, ROOT_GROUPS};

use crate::error::{Error, Result};
use crate::gqfam::FamilyJson;
use crate::linalg::Mat;
use crate::nilpotent::{
    canonical_data, catalog_element, flag_formula_check, gl_representative, parse_partition,
    sp_representative, MatrixLieAlgebra, Partition,
};
use crate::orbitind::{
    enumerate_p_infl, generic_induced_oracle, induce_partition, min_infl, GroupKind, Levi, DEFAULT_SEED,
};
use crate::pvspace::{
    b_forms, build_pv, catalog_invariants, dense_orbit_check, generic_torus, product_invariant, regularity_check,
};
use crate::rat::{fmt_q, parse_q, Q};
use crate::rootspace::{Par, RootDatum};
use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "orbitcalc", version, about = "Exact computations with parabolic subgroups, nilpotent orbits and (G,Q)-families")]
struct Cli {
    /// seed for every randomised step
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// sample count (Monte-Carlo points, probe counts)
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// tolerance for floating-point identities
    #[arg(long, global = true, allow_negative_numbers = true)]
    tol: Option<f64>,
    /// write JSON here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// write a Graphviz file (pinfl)
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct ElementArgs {
    /// gl<n> or sp<2n>
    #[arg(long)]
    group: String,
    /// Jordan type, e.g. 2,2
    #[arg(long)]
    partition: String,
    /// split form of b_± (symplectic [2,2] and [4,2])
    #[arg(long, conflicts_with = "anisotropic")]
    split: bool,
    /// anisotropic form of b_±
    #[arg(long)]
    anisotropic: bool,
    /// block scalars of the symplectic normal form, e.g. 1,-1
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["split", "anisotropic"])]
    coeffs: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Jacobson-Morozov triple, grading and canonical flag
    Canpar(ElementArgs),
    /// decorated Hasse diagram of the inflation poset
    Pinfl {
        #[command(flatten)]
        el: ElementArgs,
        /// restrict to the minimal truncation class
        #[arg(long)]
        min: bool,
        /// random probes for non-catalog subspace candidates
        #[arg(long, default_value_t = 500)]
        probes: usize,
    },
    /// prehomogeneous space of the canonical parabolic
    Pv(ElementArgs),
    /// induced class from a Levi
    Induce {
        #[arg(long)]
        group: String,
        /// gl block sizes, comma separated (the symplectic factor takes the rest)
        #[arg(long)]
        levi: String,
        /// one partition per factor, separated by ':'
        #[arg(long)]
        classes: String,
        /// also run the generic-element oracle
        #[arg(long)]
        oracle: bool,
    },
    /// Laurent expansion of c'_Q along a ray
    Gq {
        /// JSON family description
        #[arg(long)]
        family: PathBuf,
        /// ray direction, comma-separated rationals (default: a fixed regular ray)
        #[arg(long, allow_hyphen_values = true)]
        ray: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// v_Q(X) against Monte-Carlo integration of Γ'_Q
    Weight {
        /// root datum label: a1..a3, c1..c3
        #[arg(long)]
        group: String,
        /// simple roots in the Levi of Q, comma separated (empty: minimal parabolic)
        #[arg(long, default_value = "")]
        parabolic: String,
        /// X in a_0, comma-separated rationals
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// identity suites
    Check {
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// every suite
        #[arg(long)]
        all: bool,
        /// restrict root-datum suites to one group (a1..c3)
        #[arg(long)]
        group: Option<String>,
        /// restrict orbit suites to one catalog case (gl3, sp4-split, ...)
        #[arg(long)]
        case: Option<String>,
    },
    /// transcribed catalog against computed data
    Catalog {
        #[arg(long)]
        all: bool,
        #[arg(long)]
        name: Option<String>,
    },
}

/// Settings shared by the suites.
#[derive(Clone, Debug)]
pub struct Settings {
    pub seed: u64,
    pub samples: Option<usize>,
    pub tol: Option<f64>,
}

impl Default for Settings {
    fn default() -> Self {
        Settings { seed: DEFAULT_SEED, samples: None, tol: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

fn failure(reason: &str, message: String) -> Value {
    json!({"ok": false, "reason": reason, "message": message})
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) | Error::Domain(_) => 2,
        _ => 1,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { code: 0, stdout: e.to_string() };
            }
            let v = failure("usage", e.to_string().trim_end().to_string());
            return Outcome { code: 2, stdout: pretty(&v) };
        }
    };
    let settings = Settings { seed: cli.seed, samples: cli.samples, tol: cli.tol };
    let (code, value) = match dispatch(&cli, &settings) {
        Ok(r) => r,
        Err(e) => (error_code(&e), failure(e.reason(), e.to_string())),
    };
    let text = pretty(&value);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            return Outcome { code: 2, stdout: pretty(&failure("io", format!("{}: {e}", path.display()))) };
        }
        return Outcome { code, stdout: String::new() };
    }
    Outcome { code, stdout: text }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serialisable")
}

fn dispatch(cli: &Cli, s: &Settings) -> Result<(i32, Value)> {
    match &cli.cmd {
        Cmd::Canpar(el) => canpar(el).map(|v| (0, v)),
        Cmd::Pinfl { el, min, probes } => pinfl(el, *min, *probes, s, cli.dot.as_ref()).map(|v| (0, v)),
        Cmd::Pv(el) => pv(el, s).map(|v| (0, v)),
        Cmd::Induce { group, levi, classes, oracle } => induce(group, levi, classes, *oracle, s).map(|v| (0, v)),
        Cmd::Gq { family, ray, order } => gq(family, ray.as_deref(), *order, s),
        Cmd::Weight { group, parabolic, x } => weight(group, parabolic, x, s).map(|v| (0, v)),
        Cmd::Check { suite, all, group, case } => check(*suite, *all, group.as_deref(), case.as_deref(), s),
        Cmd::Catalog { all, name } => {
            if *all == name.is_some() {
                return Err(Error::Config("give exactly one of --all and --name".into()));
            }
            let r = check_catalog(name.as_deref(), s.samples.unwrap_or(50), s.seed)?;
            let code = if r.passed { 0 } else { 1 };
            let mut v = to_value(&r);
            if !r.passed {
                v["reason"] = json!("catalog_mismatch");
            }
            Ok((code, v))
        }
    }
}

/// gl<n> or sp<2n> with the matrix size.
pub fn parse_group(s: &str) -> Result<(GroupKind, usize)> {
    let bad = || Error::Config(format!("unknown group {s:?}; expected gl<n> or sp<2n>"));
    let (kind, rest) = if let Some(r) = s.strip_prefix("gl") {
        (GroupKind::Gl, r)
    } else if let Some(r) = s.strip_prefix("sp") {
        (GroupKind::Sp, r)
    } else {
        return Err(bad());
    };
    let n: usize = rest.parse().map_err(|_| bad())?;
    if n == 0 || (kind == GroupKind::Sp && n % 2 == 1) {
        return Err(bad());
    }
    Ok((kind, n))
}

fn parse_ints(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Config(format!("bad integer {t:?}"))))
        .collect()
}

fn parse_qs(s: &str) -> Result<Vec<Q>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_q(t.trim()).ok_or_else(|| Error::Config(format!("bad rational {t:?}"))))
        .collect()
}

/// Representative of the requested class. For symplectic [2,2] and [4,2]
/// `--split`/`--anisotropic` pick the normal form with the matching b_±.
pub fn element_for(group: &str, partition: &[usize], split: Option<bool>, coeffs: Option<&[i64]>) -> Result<(MatrixLieAlgebra, Mat)> {
    let (kind, n) = parse_group(group)?;
    if partition.iter().sum::<usize>() != n {
        return Err(Error::Domain(format!("partition {partition:?} is not a partition of {n}")));
    }
    match kind {
        GroupKind::Gl => {
            if split.is_some() || coeffs.is_some() {
                return Err(Error::Config("split/anisotropic forms only exist for symplectic groups".into()));
            }
            Ok((MatrixLieAlgebra::gl(n), gl_representative(partition)))
        }
        GroupKind::Sp => {
            let (x, j) = match split {
                None => sp_representative(partition, coeffs.unwrap_or(&[]))?,
                Some(want) => {
                    if !matches!(partition, [2, 2] | [4, 2]) {
                        return Err(Error::Config("split/anisotropic choice is available for [2,2] and [4,2]".into()));
                    }
                    let mut found = None;
                    for c in [[1, 1], [1, -1]] {
                        let (x, j) = sp_representative(partition, &c)?;
                        let alg = MatrixLieAlgebra::sp(j.clone())?;
                        if b_forms(&x, &alg)?.is_split() == want {
                            found = Some((x, j));
                            break;
                        }
                    }
                    found.ok_or_else(|| Error::Consistency("no normal form with the requested b_±".into()))?
                }
            };
            Ok((MatrixLieAlgebra::sp(j)?, x))
        }
    }
}

fn element(el: &ElementArgs) -> Result<(MatrixLieAlgebra, Mat, Partition)> {
    let p = parse_partition(&el.partition)?;
    let split = match (el.split, el.anisotropic) {
        (true, _) => Some(true),
        (_, true) => Some(false),
        _ => None,
    };
    let coeffs = el.coeffs.as_deref().map(parse_ints).transpose()?;
    let (alg, x) = element_for(&el.group, &p, split, coeffs.as_deref())?;
    Ok((alg, x, p))
}

fn mat_json(m: &Mat) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows).map(|i| m.row(i).iter().map(fmt_q).collect()).collect();
    json!(rows)
}

fn vecs_json(v: &[Vec<Q>]) -> Value {
    json!(v.iter().map(|b| b.iter().map(fmt_q).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn form_label(x: &Mat, alg: &MatrixLieAlgebra) -> Value {
    match b_forms(x, alg) {
        Ok(b) if alg.form().is_some() => json!(if b.is_split() { "split" } else { "anisotropic" }),
        _ => Value::Null,
    }
}

fn canpar(el: &ElementArgs) -> Result<Value> {
    let (alg, x, p) = element(el)?;
    let cd = canonical_data(&x, &alg)?;
    let grading: serde_json::Map<String, Value> =
        cd.grading.iter().map(|(k, s)| (k.to_string(), json!(s.dim()))).collect();
    let weights: serde_json::Map<String, Value> =
        cd.weights.iter().map(|(k, s)| (k.to_string(), json!(s.dim()))).collect();
    let flag: Vec<Value> = cd.flag.iter().map(|s| json!({"dim": s.dim(), "basis": vecs_json(s.basis())})).collect();
    let formulas = match flag_formula_check(&x, &alg) {
        Ok(f) => to_value(&f),
        Err(_) => Value::Null,
    };
    Ok(json!({
        "group": alg.label(),
        "partition": p,
        "form": form_label(&x, &alg),
        "triple": {"x": mat_json(&cd.triple.x), "h": mat_json(&cd.triple.h), "y": mat_json(&cd.triple.y), "valid": cd.triple.is_valid()},
        "grading_dims": grading,
        "h_weight_dims": weights,
        "dims": {"g": alg.dim(), "q": cd.q.dim(), "levi": cd.levi.dim(), "u": cd.u.dim(), "u1": cd.u1.dim(), "u2": cd.u2.dim()},
        "flag": flag,
        "flag_formulas": formulas,
    }))
}

fn pinfl(el: &ElementArgs, min: bool, probes: usize, s: &Settings, dot: Option<&PathBuf>) -> Result<Value> {
    let (alg, x, _) = element(el)?;
    let (diagram, extra) = if min {
        let m = min_infl(&alg, &x, s.samples.unwrap_or(50), s.seed)?;
        let met: Vec<Vec<&str>> = m.met.iter().map(|v| v.iter().map(|c| c.label()).collect()).collect();
        let extra = json!({"full_vertices": m.full.vertices.len(), "classes_met": met});
        (m.diagram, extra)
    } else {
        (enumerate_p_infl(&alg, &x, probes, s.seed)?, Value::Null)
    };
    if let Some(path) = dot {
        std::fs::write(path, diagram.to_dot()).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    }
    let mut v = to_value(&diagram);
    v["form"] = form_label(&x, &alg);
    if min {
        v["min_infl"] = extra;
    }
    Ok(v)
}

fn pv(el: &ElementArgs, s: &Settings) -> Result<Value> {
    let (alg, x, p) = element(el)?;
    let cd = canonical_data(&x, &alg)?;
    let space = build_pv(&cd, &alg)?;
    let xi = space.x_point()?;
    let orbit = dense_orbit_check(&space, &xi);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let (invariants, product) = match catalog_invariants(&space) {
        Ok(inv) => {
            let mut list = Vec::new();
            for i in &inv {
                let mut v = to_value(i);
                v["regular"] = json!(regularity_check(&space, &i.poly, &mut rng)?);
                list.push(v);
            }
            let product = match product_invariant(&inv) {
                Some(pr) if inv.len() > 1 => {
                    let mut v = to_value(&pr);
                    v["regular"] = json!(regularity_check(&space, &pr.poly, &mut rng)?);
                    v
                }
                _ => Value::Null,
            };
            (json!(list), product)
        }
        Err(Error::Domain(_)) => {
            let found = space.levi.relative_invariants(3)?;
            (to_value(&found), Value::Null)
        }
        Err(e) => return Err(e),
    };
    let torus = if orbit.generic { to_value(&generic_torus(&space, &xi)?) } else { Value::Null };
    Ok(json!({
        "group": alg.label(),
        "partition": p,
        "form": form_label(&x, &alg),
        "dimension": space.dim(),
        "x_point": xi.iter().map(fmt_q).collect::<Vec<_>>(),
        "dense_orbit": orbit,
        "invariants": invariants,
        "product_invariant": product,
        "torus": torus,
    }))
}

/// Levi from gl block sizes and the group; classes separated by ':'.
pub fn parse_levi(group: &str, levi: &str, classes: &str) -> Result<(Levi, Vec<Partition>)> {
    let (kind, n) = parse_group(group)?;
    let gl: Vec<usize> = parse_ints(levi)?
        .into_iter()
        .map(|k| usize::try_from(k).ok().filter(|&k| k > 0).ok_or_else(|| Error::Config(format!("bad block {k}"))))
        .collect::<Result<_>>()?;
    let used: usize = gl.iter().sum();
    let sp = match kind {
        GroupKind::Gl if used == n => 0,
        GroupKind::Sp if 2 * used <= n => n - 2 * used,
        _ => return Err(Error::Domain(format!("blocks {gl:?} do not fit {group}"))),
    };
    let cls: Vec<Partition> = classes.split(':').map(parse_partition).collect::<Result<_>>()?;
    Ok((Levi { kind, gl, sp }, cls))
}

fn induce(group: &str, levi: &str, classes: &str, oracle: bool, s: &Settings) -> Result<Value> {
    let (l, cls) = parse_levi(group, levi, classes)?;
    let rule = induce_partition(&l, &cls)?;
    let mut v = json!({"group": group, "levi": to_value(&l), "classes": cls, "partition": rule});
    if oracle {
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        let o = generic_induced_oracle(&l, &cls, &mut rng)?;
        v["agrees"] = json!(o.partition == rule);
        v["oracle"] = to_value(&o);
    }
    Ok(v)
}

fn gq(path: &PathBuf, ray: Option<&str>, order: usize, s: &Settings) -> Result<(i32, Value)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    let fj: FamilyJson = serde_json::from_str(&text).map_err(|e| Error::Config(format!("family JSON: {e}")))?;
    let rd = RootDatum::from_label(&fj.group)?;
    let fam = fj.build(&rd)?;
    fam.check_compatible(&rd)?;
    let lambda0 = match ray {
        Some(r) => parse_qs(r)?,
        None => crate::cones::default_ray(&rd, fam.base),
    };
    if lambda0.len() != rd.dim {
        return Err(Error::Domain(format!("ray needs {} coordinates", rd.dim)));
    }
    let tol = s.tol.unwrap_or(1e-9);
    let l = fam.c_prime(&rd, &lambda0, order, tol)?;
    Ok((
        0,
        json!({
            "group": rd.label(),
            "base": fam.base.indices(),
            "top": fam.top.indices(),
            "compatible": true,
            "ray": lambda0.iter().map(fmt_q).collect::<Vec<_>>(),
            "lowest_order": l.lowest,
            "laurent": l.coeffs,
            "c_prime_0": l.value,
        }),
    ))
}

fn weight(group: &str, parabolic: &str, x: &str, s: &Settings) -> Result<Value> {
    let rd = RootDatum::from_label(group)?;
    let idx: Vec<usize> = parse_ints(parabolic)?
        .into_iter()
        .map(|i| usize::try_from(i).ok().filter(|&i| i < rd.rank).ok_or_else(|| Error::Config(format!("bad simple root {i}"))))
        .collect::<Result<_>>()?;
    let q = Par::from_indices(&idx);
    let xv = parse_qs(x)?;
    if xv.len() != rd.dim {
        return Err(Error::Domain(format!("X needs {} coordinates", rd.dim)));
    }
    if !rd.in_space(&xv, q) {
        return Err(Error::Domain(format!("X must lie in a_{}", q.label())));
    }
    let v = crate::cones::v_weight(&rd, q, &xv)?;
    let mc = crate::cones::mc_v_weight(&rd, q, &xv, s.samples.unwrap_or(1_000_000), s.seed);
    let rel = if v != 0.0 { (v - mc).abs() / v.abs() } else { (v - mc).abs() };
    Ok(json!({"v_weight": v, "mc_estimate": mc, "rel_err": rel}))
}

fn check(suite: Option<Suite>, all: bool, group: Option<&str>, case: Option<&str>, s: &Settings) -> Result<(i32, Value)> {
    let suites: Vec<Suite> = match (suite, all) {
        (Some(Suite::All), _) | (None, true) => Suite::every().to_vec(),
        (Some(x), false) => vec![x],
        _ => return Err(Error::Config("give exactly one of --suite and --all".into())),
    };
    if let Some(g) = group {
        RootDatum::from_label(g)?;
        if !ROOT_GROUPS.contains(&g) {
            return Err(Error::Config(format!("suites cover {ROOT_GROUPS:?}")));
        }
    }
    if let Some(c) = case {
        catalog_element(c)?;
    }
    let reports: Vec<Result<SuiteReport>> = std::thread::scope(|sc| {
        let handles: Vec<_> = suites.iter().map(|&x| sc.spawn(move || run_suite(x, group, case, s))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    let reports: Vec<SuiteReport> = reports.into_iter().collect::<Result<_>>()?;
    let passed = reports.iter().all(|r| r.passed);
    let mut v = json!({"seed": s.seed, "passed": passed, "suites": reports});
    if !passed {
        v["reason"] = json!("check_failed");
    }
    Ok((if passed { 0 } else { 1 }, v))
}
