use super::catalog::check_catalog;
use super::Settings;
use crate::cones::*;
use crate::error::{Error, Result};
use crate::gqfam::*;
use crate::linalg::{Mat, Subspace};
use crate::nilpotent::*;
use crate::orbitind::*;
use crate::pvspace::*;
use crate::rat::{qf, qi, vsub, Q};
use crate::rootspace::{Par, RootDatum};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

pub const ROOT_GROUPS: [&str; 6] = ["a1", "a2", "a3", "c1", "c2", "c3"];

const MAX_LISTED: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Langlands,
    Gq,
    Gprime,
    Weight,
    Recursion,
    Induction,
    Canpar,
    Pinfl,
    Pv,
    Catalog,
    All,
}

impl Suite {
    pub fn every() -> &'static [Suite] {
        use Suite::*;
        &[Langlands, Gq, Gprime, Weight, Recursion, Induction, Canpar, Pinfl, Pv, Catalog]
    }

    fn salt(self) -> u64 {
        Suite::every().iter().position(|&s| s == self).unwrap_or(99) as u64 + 1
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub cases: usize,
    pub failed: usize,
    /// largest observed deviation of a floating-point identity (0 for exact suites)
    pub max_deviation: f64,
    pub failures: Vec<String>,
}

struct Tally {
    cases: usize,
    failed: usize,
    max_dev: f64,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Tally {
        Tally { cases: 0, failed: 0, max_dev: 0.0, failures: Vec::new() }
    }

    fn record(&mut self, pass: bool, dev: f64, what: impl FnOnce() -> String) {
        self.cases += 1;
        if dev.is_finite() {
            self.max_dev = self.max_dev.max(dev);
        }
        if !pass {
            self.failed += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(what());
            }
        }
    }

    fn exact(&mut self, pass: bool, what: impl FnOnce() -> String) {
        self.record(pass, 0.0, what)
    }

    fn error(&mut self, e: Error, what: &str) {
        self.record(false, 0.0, || format!("{what}: {e}"))
    }

    fn report(self, suite: Suite) -> SuiteReport {
        SuiteReport {
            suite,
            passed: self.failed == 0 && self.cases > 0,
            cases: self.cases,
            failed: self.failed,
            max_deviation: self.max_dev,
            failures: self.failures,
        }
    }
}

pub fn run_suite(suite: Suite, group: Option<&str>, case: Option<&str>, s: &Settings) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed.wrapping_mul(0x9E37_79B9_7F4A_7C15).wrapping_add(suite.salt()));
    let groups: Vec<&str> = match group {
        Some(g) => vec![g],
        None => ROOT_GROUPS.to_vec(),
    };
    let cases: Vec<&str> = match case {
        Some(c) => vec![c],
        None => CATALOG.to_vec(),
    };
    let mut t = Tally::new();
    match suite {
        Suite::Langlands => {
            for g in &groups {
                langlands(&RootDatum::from_label(g)?, &mut rng, s.tol.unwrap_or(1e-9), &mut t);
            }
        }
        Suite::Gq => {
            for g in &groups {
                holomorphy(&RootDatum::from_label(g)?, &mut rng, s.tol.unwrap_or(1e-9), &mut t);
            }
        }
        Suite::Gprime => {
            for g in &groups {
                gprime(&RootDatum::from_label(g)?, &mut rng, &mut t);
            }
        }
        Suite::Weight => {
            for g in &groups {
                let rd = RootDatum::from_label(g)?;
                weights(&rd, &mut rng, s.samples.unwrap_or(1_000_000), &mut t);
                w_factors(&rd, &mut rng, s.tol.unwrap_or(1e-9), &mut t);
            }
        }
        Suite::Recursion => {
            for g in &groups {
                recursion(&RootDatum::from_label(g)?, &mut rng, s.tol.unwrap_or(1e-8), &mut t);
            }
        }
        Suite::Induction => induction(&mut rng, &mut t),
        Suite::Canpar => {
            for c in &cases {
                canpar(c, &mut rng, &mut t)?;
            }
        }
        Suite::Pinfl => {
            for c in &cases {
                pinfl(c, s.samples.unwrap_or(50), s.seed, &mut t)?;
            }
        }
        Suite::Pv => {
            for c in &cases {
                pv(c, &mut rng, &mut t)?;
            }
        }
        Suite::Catalog => {
            let r = check_catalog(case, s.samples.unwrap_or(50), s.seed)?;
            for e in r.entries {
                let ok = e.matches;
                t.exact(ok, || format!("{}: {}", e.name, e.mismatches.join("; ")));
            }
        }
        Suite::All => return Err(Error::Config("'all' is not a single suite".into())),
    }
    Ok(t.report(suite))
}

fn langlands(rd: &RootDatum, rng: &mut ChaCha8Rng, tol: f64, t: &mut Tally) {
    for q in rd.all_parabolics() {
        for _ in 0..100 {
            let l = rd.random_regular(rng, q, 7, 5);
            let mut s1 = 0.0;
            let mut s2 = 0.0;
            let mut scale: f64 = 1.0;
            let mut bad = None;
            for p in rd.containing(q) {
                let e = rd.eps(p) as f64;
                let vals = (hat_theta(rd, q, p, &l), theta(rd, p, rd.g(), &l), theta(rd, q, p, &l), hat_theta(rd, p, rd.g(), &l));
                match vals {
                    (Ok(a), Ok(b), Ok(c), Ok(d)) => {
                        let (t1, t2) = (e / (a * b), e / (c * d));
                        scale = scale.max(t1.abs()).max(t2.abs());
                        s1 += t1;
                        s2 += t2;
                    }
                    (Err(x), ..) | (_, Err(x), ..) | (_, _, Err(x), _) | (.., Err(x)) => bad = Some(x),
                }
            }
            if let Some(e) = bad {
                t.error(e, &format!("{} {}", rd.label(), q.label()));
                continue;
            }
            let expect = if q == rd.g() { 1.0 } else { 0.0 };
            let dev = (s1 - expect).abs().max((s2 - expect).abs()) / scale;
            t.record(dev < tol, dev, || format!("{} Q={} λ={:?}: deviation {dev:e}", rd.label(), q.label(), l));
        }
    }
}

fn holomorphy(rd: &RootDatum, rng: &mut ChaCha8Rng, tol: f64, t: &mut Tally) {
    let pars = rd.all_parabolics();
    for i in 0..50 {
        let q = pars[i % pars.len()];
        let f = random_family(rd, rng, q);
        if let Err(e) = f.check_compatible(rd) {
            t.error(e, &format!("{} family {i}", rd.label()));
            continue;
        }
        let mut first = None;
        for _ in 0..20 {
            let ray = rd.random_regular(rng, q, 6, 4);
            match f.c_prime(rd, &ray, 0, tol) {
                Ok(l) => {
                    let a: f64 = *first.get_or_insert(l.value);
                    let dev = (a - l.value).abs() / a.abs().max(1.0);
                    t.record(dev < tol, dev, || format!("{} Q={}: c'(0) {a} vs {}", rd.label(), q.label(), l.value));
                }
                Err(e) => t.error(e, &format!("{} Q={} ray {ray:?}", rd.label(), q.label())),
            }
        }
    }
}

fn gprime(rd: &RootDatum, rng: &mut ChaCha8Rng, t: &mut Tally) {
    for q in rd.all_parabolics() {
        let mut n = 0;
        while n < 1000 {
            let x = rd.random_in(rng, q, 4, 3);
            let h = rd.random_in(rng, q, 6, 5);
            if !off_walls(rd, q, &h, &x) {
                continue;
            }
            n += 1;
            let lhs = gamma_dprime(rd, q, &h, &x);
            let rhs = rd.eps_rel(q, rd.g()) * gamma_prime(rd, q, &vsub(&x, &h), &x);
            t.exact(lhs == rhs, || format!("{} Q={} H={h:?} X={x:?}: {lhs} vs {rhs}", rd.label(), q.label()));
        }
    }
}

/// X in the open positive chamber of a_Q^G.
fn positive_x(rd: &RootDatum, rng: &mut ChaCha8Rng, q: Par) -> Result<Vec<Q>> {
    let fd = rd.fundamental_data(q, rd.g())?;
    let mut x = vec![qi(0); rd.dim];
    for c in &fd.coweights {
        let k = qf(rng.gen_range(1..=6), rng.gen_range(1..=3));
        for (xi, ci) in x.iter_mut().zip(c) {
            *xi += &k * ci;
        }
    }
    Ok(x)
}

fn weights(rd: &RootDatum, rng: &mut ChaCha8Rng, samples: usize, t: &mut Tally) {
    for q in rd.all_parabolics().into_iter().filter(|&q| q != rd.g()) {
        for _ in 0..20 {
            let x = match positive_x(rd, rng, q) {
                Ok(x) => x,
                Err(e) => return t.error(e, &rd.label()),
            };
            let seed = rng.gen::<u64>();
            match v_weight(rd, q, &x) {
                Ok(v) => {
                    let mc = mc_v_weight(rd, q, &x, samples, seed);
                    let rel = (v - mc).abs() / v.abs();
                    t.record(v > 0.0 && rel <= 0.01, rel, || format!("{} Q={} X={x:?}: {v} vs {mc}", rd.label(), q.label()));
                }
                Err(e) => t.error(e, &format!("{} Q={}", rd.label(), q.label())),
            }
        }
    }
}

fn w_factors(rd: &RootDatum, rng: &mut ChaCha8Rng, tol: f64, t: &mut Tally) {
    let pars = rd.all_parabolics();
    for i in 0..100 {
        let p = pars[i % pars.len()];
        let tp = TruncationParam::new(rd.random_in(rng, rd.p0(), 6, 3));
        let h = rd.random_in(rng, p, 6, 3);
        match w_factor(rd, p, &tp, &h, tol) {
            Ok(w) => {
                let dev = (w.direct - w.expanded).abs() / w.direct.abs().max(1.0);
                t.record(dev <= tol, dev, || format!("{} P={}: {} vs {}", rd.label(), p.label(), w.direct, w.expanded));
            }
            Err(e) => t.error(e, &format!("{} P={} w-factor", rd.label(), p.label())),
        }
    }
}

fn report(t: &mut Tally, r: Result<Report>, tol: f64, what: &str) {
    match r {
        Ok(r) => t.record(r.passes(tol), r.max_deviation, || format!("{what}: deviation {:e} at {:?}", r.max_deviation, r.witness)),
        Err(e) => t.error(e, what),
    }
}

fn recursion(rd: &RootDatum, rng: &mut ChaCha8Rng, tol: f64, t: &mut Tally) {
    let g = rd.label();
    for q in rd.all_parabolics() {
        let ql = q.label();
        let c = constant_family(rd, q);
        for mode in [Mode::Frugal, Mode::Cofrugal] {
            report(t, c.check_recursion(rd, mode, 100, rng), tol, &format!("{g} Q={ql} constant {mode:?}"));
        }
        let f = make_frugal(rd, &random_exppoly(rd, rng, q, rd.g(), 2), q);
        report(t, f.check_recursion(rd, Mode::Frugal, 100, rng), tol, &format!("{g} Q={ql} frugal"));
        let h = make_cofrugal(rd, &random_exppoly(rd, rng, q, rd.g(), 2), q);
        report(t, h.check_recursion(rd, Mode::Cofrugal, 100, rng), tol, &format!("{g} Q={ql} cofrugal"));
        let x = rd.random_in(rng, q, 3, 2);
        let y = rd.random_in(rng, q, 3, 2);
        let c = make_cofrugal(rd, &ExpPoly::exp(x), q);
        let d = make_frugal(rd, &ExpPoly::exp(y), q);
        report(t, product_split(rd, &c, &d, 100, rng), tol, &format!("{g} Q={ql} split exp"));
        let c = make_cofrugal(rd, &random_exppoly(rd, rng, q, rd.g(), 2), q);
        let d = random_family(rd, rng, q);
        report(t, product_split(rd, &c, &d, 100, rng), tol, &format!("{g} Q={ql} split random"));
        theta_round_trip(rd, q, rng, t);
    }
}

fn theta_round_trip(rd: &RootDatum, q: Par, rng: &mut ChaCha8Rng, t: &mut Tally) {
    let vals: BTreeMap<Par, ExpPoly> = rd.containing(q).into_iter().map(|p| (p, random_exppoly(rd, rng, q, p, 2))).collect();
    let f = values_from_exppolys(&vals);
    let fwd = |p: Par, mu: &[Q]| theta_forward(rd, q, &f, p, mu);
    let inv = |p: Par, mu: &[Q]| theta_inverse(rd, q, &f, p, mu);
    for _ in 0..10 {
        let l = rd.random_regular(rng, q, 5, 4);
        let direct = f(rd.g(), &l);
        let a = theta_inverse(rd, q, &fwd, rd.g(), &l);
        let b = theta_forward(rd, q, &inv, rd.g(), &l);
        let ok = a == direct && b == direct;
        t.exact(ok, || format!("{} Q={}: theta inversion at {l:?}", rd.label(), q.label()));
    }
}

fn induction(rng: &mut ChaCha8Rng, t: &mut Tally) {
    let mut data = Vec::new();
    for n in 1..=6 {
        data.extend(all_levi_data(GroupKind::Gl, n));
    }
    for n in [2, 4, 6] {
        data.extend(all_levi_data(GroupKind::Sp, n));
    }
    for (levi, classes) in &data {
        let rule = induce_partition(levi, classes);
        let oracle = generic_induced_oracle(levi, classes, rng);
        match (rule, oracle) {
            (Ok(r), Ok(o)) => {
                let ok = r == o.partition && o.p_orbit_dim == o.expected_p_orbit_dim && o.g_orbit_dim == o.expected_g_orbit_dim;
                t.exact(ok, || format!("{levi:?} {classes:?}: rule {r:?}, oracle {o:?}"));
            }
            (Err(e), _) | (_, Err(e)) => t.error(e, &format!("{levi:?} {classes:?}")),
        }
    }
    // every way of grouping the gl blocks: GL data up to 4, Sp data up to 4
    let mut chains = Vec::new();
    for n in 2..=4 {
        for (levi, classes) in all_levi_data(GroupKind::Gl, n) {
            if levi.gl.len() >= 2 {
                for grouping in compositions(levi.gl.len()) {
                    chains.push((levi.clone(), classes.clone(), grouping));
                }
            }
        }
    }
    for (levi, classes) in all_levi_data(GroupKind::Sp, 4) {
        for used in 1..=levi.gl.len() {
            for grouping in compositions(used) {
                chains.push((levi.clone(), classes.clone(), grouping));
            }
        }
    }
    for (levi, classes, grouping) in chains {
        match transitivity_check(&levi, &classes, &grouping, rng) {
            Ok(tr) => t.exact(tr.holds(), || format!("{levi:?} {classes:?} via {grouping:?}: {tr:?}")),
            Err(e) => t.error(e, &format!("{levi:?} {classes:?} via {grouping:?}")),
        }
    }
}

fn conj(g: &Mat, x: &Mat) -> Option<Mat> {
    Some(g.mul(x).mul(&g.inverse()?))
}

fn same_data(a: &CanonicalData, b: &CanonicalData) -> bool {
    a.q == b.q && a.u == b.u && a.u1 == b.u1 && a.u2 == b.u2 && a.flag == b.flag
}

fn canpar(case: &str, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let (alg, x) = catalog_element(case)?;
    let base = canonical_data(&x, &alg)?;
    let tr = &base.triple;
    t.exact(tr.is_valid() && alg.contains(&tr.h) && alg.contains(&tr.y), || format!("{case}: triple brackets"));
    match flag_formula_check(&x, &alg) {
        Ok(f) => t.exact(f.passed(), || format!("{case}: flag formulas {:?}", f.checks)),
        Err(e) => t.error(e, case),
    }
    for _ in 0..2 {
        let cd = jm_triple_with(&x, &alg, Some(&mut *rng)).and_then(|tr| canonical_data_from(tr, &alg));
        match cd {
            Ok(cd) => t.exact(cd.triple.is_valid() && same_data(&cd, &base), || format!("{case}: randomised triple changes the data")),
            Err(e) => t.error(e, case),
        }
    }
    for _ in 0..10 {
        let g = alg.random_group_element(rng);
        let Some(xg) = conj(&g, &x) else {
            t.exact(false, || format!("{case}: singular group element"));
            continue;
        };
        match canonical_data(&xg, &alg) {
            Ok(cd) => {
                let c = conjugation_map(&g);
                let moved: Vec<Subspace> = base.flag.iter().map(|s| s.image(&g)).collect();
                let ok = alg.preserves_form(&g)
                    && cd.triple.is_valid()
                    && cd.q == base.q.image(&c)
                    && cd.u == base.u.image(&c)
                    && cd.u1 == base.u1.image(&c)
                    && cd.u2 == base.u2.image(&c)
                    && cd.flag == moved;
                t.exact(ok, || format!("{case}: conjugation equivariance"));
            }
            Err(e) => t.error(e, case),
        }
    }
    Ok(())
}

fn pinfl(case: &str, samples: usize, seed: u64, t: &mut Tally) -> Result<()> {
    let (alg, x) = catalog_element(case)?;
    let cd = canonical_data(&x, &alg)?;
    let mi = match min_infl(&alg, &x, samples, seed) {
        Ok(m) => m,
        Err(e) => {
            t.error(e, case);
            return Ok(());
        }
    };
    for (tag, d) in [("full", &mi.full), ("min", &mi.diagram)] {
        t.exact(d.is_upward_closed(&alg), || format!("{case} {tag}: not upward closed"));
        for v in &d.vertices {
            t.exact(v.parabolic.lie(&alg).contains_space(&cd.u), || format!("{case} {tag} {}: u not in Lie P", v.label()));
        }
        for &(a, b) in &d.arrows {
            let ok = d.vertices[a].parabolic.is_contained_in(&d.vertices[b].parabolic);
            t.exact(ok, || format!("{case} {tag}: arrow {} -> {} not upward", d.vertices[a].label(), d.vertices[b].label()));
        }
    }
    let d = &mi.diagram;
    for v in &d.vertices {
        let np = match &v.ngamma {
            NGamma::Nilradical { target } => d.vertices[*target].parabolic.nilradical(&alg),
            NGamma::Explicit { space, .. } => space.clone(),
        };
        match verify_ngamma(&alg, &x, &v.parabolic, &np, 12, seed) {
            Ok(r) => t.exact(r.passed, || format!("{case} {}: assigned N' fails", v.label())),
            Err(e) => t.error(e, &format!("{case} {}", v.label())),
        }
    }
    Ok(())
}

fn pv(case: &str, rng: &mut ChaCha8Rng, t: &mut Tally) -> Result<()> {
    let (alg, x) = catalog_element(case)?;
    let cd = canonical_data(&x, &alg)?;
    let space = build_pv(&cd, &alg)?;
    t.exact(space.levi.is_representation(), || format!("{case}: not a representation"));
    t.exact(space.dim() == cd.u1.dim() - cd.u2.dim(), || format!("{case}: dimension"));
    let xi = space.x_point()?;
    let orbit = dense_orbit_check(&space, &xi);
    t.exact(orbit.generic, || format!("{case}: X is not generic"));
    t.exact(!dense_orbit_check(&space, &vec![Q::zero(); space.dim()]).generic, || format!("{case}: 0 is generic"));
    let inv = match catalog_invariants(&space) {
        Ok(i) => i,
        Err(e) => {
            t.error(e, case);
            return Ok(());
        }
    };
    for i in &inv {
        let ch = space.levi.character_of(&i.poly);
        let ok = ch.as_ref() == Some(&i.character) && i.character.iter().any(|c| !c.is_zero()) && !i.poly.eval(&xi).is_zero();
        t.exact(ok, || format!("{case}: {} is not a relative invariant nonzero at X", i.name));
    }
    let target = if inv.len() == 1 { inv[0].clone() } else { product_invariant(&inv).expect("nonempty") };
    match regularity_check(&space, &target.poly, rng) {
        Ok(r) => t.exact(r, || format!("{case}: {} is not regular", target.name)),
        Err(e) => t.error(e, case),
    }
    // the invariant vanishes exactly off the dense orbit on a small grid
    let d = space.dim();
    let mut pt = vec![-1i64; d];
    let mut agree = true;
    loop {
        let v: Vec<Q> = pt.iter().map(|&k| qi(k)).collect();
        if target.poly.eval(&v).is_zero() == dense_orbit_check(&space, &v).generic {
            agree = false;
            break;
        }
        let mut i = 0;
        while i < d && pt[i] == 1 {
            pt[i] = -1;
            i += 1;
        }
        if i == d {
            break;
        }
        pt[i] += 1;
    }
    t.exact(agree, || format!("{case}: zero set of {} differs from the singular set", target.name));
    match generic_torus(&space, &xi) {
        Ok(tor) => {
            let expect = match case {
                "gl3" | "gl4" | "sp4-split" => 1,
                _ => 0,
            };
            t.exact(tor.dim == expect, || format!("{case}: torus dimension {} (expected {expect})", tor.dim));
        }
        Err(e) => t.error(e, case),
    }
    if alg.form().is_some() {
        match b_forms(&x, &alg) {
            Ok(b) => t.exact(b.is_split() == case.ends_with("-split"), || format!("{case}: b_± classification")),
            Err(e) => t.error(e, case),
        }
    }
    Ok(())
}
