//! Exponential-polynomial (G,Q)-families, the regularised value c′_Q, the
//! recursion and splitting identities, and the theta-inversion transforms.

use crate::cones::{hat_theta_rat, theta_rat};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::poly::Poly;
use crate::rat::{dot, qi, rational_sqrt, square_class, to_f64, to_f64_vec, Q};
use num_bigint::BigInt;
use crate::rootspace::{Par, RootDatum};
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// λ ↦ Σ p_j(λ) e^{⟨λ, X_j⟩} with λ and X_j in ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPoly {
    pub dim: usize,
    pub terms: Vec<(Vec<Q>, Poly)>,
}

impl ExpPoly {
    pub fn zero(dim: usize) -> ExpPoly {
        ExpPoly { dim, terms: vec![] }
    }

    pub fn one(dim: usize) -> ExpPoly {
        ExpPoly::exp(vec![Q::zero(); dim])
    }

    pub fn exp(x: Vec<Q>) -> ExpPoly {
        let d = x.len();
        ExpPoly { dim: d, terms: vec![(x, Poly::one(d))] }
    }

    pub fn from_terms(dim: usize, terms: Vec<(Vec<Q>, Poly)>) -> ExpPoly {
        ExpPoly { dim, terms }.normalize()
    }

    /// Merge equal exponents, drop zero polynomials, sort.
    pub fn normalize(self) -> ExpPoly {
        let mut map: BTreeMap<Vec<Q>, Poly> = BTreeMap::new();
        for (x, p) in self.terms {
            let e = map.entry(x).or_insert_with(|| Poly::zero(self.dim));
            *e = e.add(&p);
        }
        ExpPoly { dim: self.dim, terms: map.into_iter().filter(|(_, p)| !p.is_zero()).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &ExpPoly) -> ExpPoly {
        let mut t = self.terms.clone();
        t.extend(o.terms.iter().cloned());
        ExpPoly { dim: self.dim, terms: t }.normalize()
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { dim: self.dim, terms: self.terms.iter().map(|(x, p)| (x.clone(), p.neg())).collect() }
    }

    pub fn sub(&self, o: &ExpPoly) -> ExpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ExpPoly) -> ExpPoly {
        let mut t = Vec::new();
        for (x1, p1) in &self.terms {
            for (x2, p2) in &o.terms {
                let x: Vec<Q> = x1.iter().zip(x2).map(|(a, b)| a + b).collect();
                t.push((x, p1.mul(p2)));
            }
        }
        ExpPoly { dim: self.dim, terms: t }.normalize()
    }

    /// λ ↦ f(Mλ) for a square matrix M.
    pub fn compose(&self, m: &Mat) -> ExpPoly {
        let mt = m.transpose();
        let t = self.terms.iter().map(|(x, p)| (mt.mul_vec(x), p.substitute_linear(m))).collect();
        ExpPoly { dim: self.dim, terms: t }.normalize()
    }

    pub fn eval_f64(&self, lambda: &[Q]) -> f64 {
        let lf = to_f64_vec(lambda);
        self.terms.iter().map(|(x, p)| p.eval_f64(&lf) * to_f64(&dot(lambda, x)).exp()).sum()
    }

    /// Taylor coefficients of z ↦ f(zλ0) up to z^order, exact.
    pub fn ray_series(&self, lambda0: &[Q], order: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); order + 1];
        for (x, p) in &self.terms {
            let a = dot(lambda0, x);
            let pc = p.ray_coeffs(lambda0, order);
            let mut ec = vec![Q::one(); order + 1];
            for k in 1..=order {
                ec[k] = &ec[k - 1] * &a / qi(k as i64);
            }
            for (i, ci) in pc.iter().enumerate() {
                if ci.is_zero() {
                    continue;
                }
                for j in 0..=order - i {
                    out[i + j] += ci * &ec[j];
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Laurent {
    /// coefficients of z^{-d}, …, z^{max_order}
    pub coeffs: Vec<f64>,
    pub lowest: i32,
    pub value: f64,
}

/// A (G,Q)-family relative to the Levi of `top`: one ExpPoly for each P with
/// base ⊆ P ⊆ top, all regarded as functions on a_base^G.
#[derive(Clone, Debug, PartialEq)]
pub struct GQFamily {
    pub base: Par,
    pub top: Par,
    pub members: BTreeMap<Par, ExpPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Frugal,
    Cofrugal,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub samples: usize,
    pub max_deviation: f64,
    pub witness: Option<Vec<Q>>,
}

impl Report {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_deviation < tol
    }
}

fn covers(rd: &RootDatum, f: &GQFamily) -> bool {
    rd.between(f.base, f.top).iter().all(|p| f.members.contains_key(p)) && f.members.len() == rd.between(f.base, f.top).len()
}

impl GQFamily {
    pub fn new(rd: &RootDatum, base: Par, top: Par, members: BTreeMap<Par, ExpPoly>) -> Result<GQFamily> {
        if !top.contains(base) {
            return Err(Error::Domain(format!("{} is not contained in {}", base.label(), top.label())));
        }
        let pi = rd.proj(base);
        let members = members.into_iter().map(|(p, c)| (p, c.compose(pi))).collect();
        let f = GQFamily { base, top, members };
        if !covers(rd, &f) {
            return Err(Error::Domain("family must assign a function to every parabolic in range".into()));
        }
        Ok(f)
    }

    pub fn get(&self, p: Par) -> &ExpPoly {
        &self.members[&p]
    }

    /// Exact check of the adjacent-wall compatibility condition.
    pub fn check_compatible(&self, rd: &RootDatum) -> Result<()> {
        for p in rd.between(self.base, self.top) {
            for pp in rd.between(p, self.top) {
                if pp.size() != p.size() + 1 {
                    continue;
                }
                if !self.agree_on_wall(rd, p, pp) {
                    return Err(Error::Incompatible(format!(
                        "c_{} and c_{} differ on the wall",
                        p.label(),
                        pp.label()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Checks c_P = c_P′ on {λ : λ_P^{P′} = 0} for any nested pair.
    pub fn agree_on_wall(&self, rd: &RootDatum, p: Par, pp: Par) -> bool {
        let wall = rd.proj(self.base).sub(&rd.rel_proj(p, pp));
        self.get(p).compose(&wall) == self.get(pp).compose(&wall)
    }

    pub fn mul(&self, o: &GQFamily) -> Result<GQFamily> {
        if self.base != o.base || self.top != o.top {
            return Err(Error::Domain("families over different parabolics".into()));
        }
        let members = self.members.iter().map(|(p, c)| (*p, c.mul(o.get(*p)))).collect();
        Ok(GQFamily { base: self.base, top: self.top, members })
    }

    pub fn add(&self, o: &GQFamily) -> Result<GQFamily> {
        if self.base != o.base || self.top != o.top {
            return Err(Error::Domain("families over different parabolics".into()));
        }
        let members = self.members.iter().map(|(p, c)| (*p, c.add(o.get(*p)))).collect();
        Ok(GQFamily { base: self.base, top: self.top, members })
    }

    fn denominators(&self, rd: &RootDatum, lambda: &[Q]) -> Result<Vec<(Par, i32, Q, f64)>> {
        let mut out = Vec::new();
        for p in rd.between(self.base, self.top) {
            let r = hat_theta_rat(rd, self.base, p, lambda) * theta_rat(rd, p, self.top, lambda);
            if r.is_zero() {
                return Err(Error::Domain("λ lies on a singular hyperplane".into()));
            }
            let eh = rd.fd(self.base, p).eta_hat_sq.clone() * rd.fd(p, self.top).eta_sq.clone();
            // 1/(η̂η) taken in floating point once
            let inv_const = (1.0 / to_f64(&eh)).sqrt();
            out.push((p, rd.eps_rel(self.base, p), r, inv_const));
        }
        Ok(out)
    }

    /// Laurent expansion of z ↦ c′_Q(zλ0) and the value c′_Q(0).
    pub fn c_prime(&self, rd: &RootDatum, lambda0: &[Q], max_order: usize, tol: f64) -> Result<Laurent> {
        let d = self.top.size() - self.base.size();
        let dens = self.denominators(rd, lambda0)?;
        let n = d + max_order + 1;
        let mut coeffs = vec![0.0f64; n];
        let mut scale = vec![0.0f64; n];
        for (p, eps, r, inv_const) in dens {
            let series = self.get(p).ray_series(lambda0, n - 1);
            for k in 0..n {
                let exact = &series[k] / &r * qi(eps as i64);
                let term = to_f64(&exact) * inv_const;
                coeffs[k] += term;
                scale[k] += term.abs();
            }
        }
        for k in 0..d {
            if coeffs[k].abs() > tol * scale[k].max(1.0) {
                return Err(Error::Incompatible(format!(
                    "coefficient of z^{} is {} (terms of size {})",
                    k as i64 - d as i64,
                    coeffs[k],
                    scale[k]
                )));
            }
        }
        Ok(Laurent { value: coeffs[d], coeffs, lowest: -(d as i32) })
    }

    /// c′_Q(λ) at a regular λ by direct summation.
    pub fn c_prime_at(&self, rd: &RootDatum, lambda: &[Q]) -> Result<f64> {
        let dens = self.denominators(rd, lambda)?;
        Ok(dens.into_iter().map(|(p, eps, r, ic)| eps as f64 * self.get(p).eval_f64(lambda) / to_f64(&r) * ic).sum())
    }

    /// The (G,P)-family c_R(λ_P), R ⊇ P.
    pub fn restrict_to(&self, rd: &RootDatum, p: Par) -> Result<GQFamily> {
        if !p.contains(self.base) || !self.top.contains(p) {
            return Err(Error::Domain(format!("{} not in range of the family", p.label())));
        }
        let pi = rd.proj(p);
        let members = rd.between(p, self.top).into_iter().map(|r| (r, self.get(r).compose(pi))).collect();
        Ok(GQFamily { base: p, top: self.top, members })
    }

    /// The members c_R, R ⊇ P, as a (G,P)-family without restricting λ to a_P.
    pub fn above(&self, rd: &RootDatum, p: Par) -> Result<GQFamily> {
        if !p.contains(self.base) || !self.top.contains(p) {
            return Err(Error::Domain(format!("{} not in range of the family", p.label())));
        }
        let members = rd.between(p, self.top).into_iter().map(|r| (r, self.get(r).clone())).collect();
        Ok(GQFamily { base: p, top: self.top, members })
    }

    /// The (M, M∩Q)-family c^P_{M∩R} = c_R, Q ⊆ R ⊆ P.
    pub fn descend_to(&self, rd: &RootDatum, p: Par) -> Result<GQFamily> {
        if !p.contains(self.base) || !self.top.contains(p) {
            return Err(Error::Domain(format!("{} not in range of the family", p.label())));
        }
        let members = rd.between(self.base, p).into_iter().map(|r| (r, self.get(r).clone())).collect();
        Ok(GQFamily { base: self.base, top: p, members })
    }

    pub fn is_frugal(&self, rd: &RootDatum) -> bool {
        let cq = self.get(self.base);
        rd.between(self.base, self.top).into_iter().all(|p| {
            cq.compose(rd.proj(p)).compose(rd.proj(self.base)) == *self.get(p)
        })
    }

    pub fn is_cofrugal(&self, rd: &RootDatum) -> bool {
        let ct = self.get(self.top);
        rd.between(self.base, self.top).into_iter().all(|p| {
            let m = rd.proj(self.base).sub(&rd.rel_proj(p, self.top));
            ct.compose(&m) == *self.get(p)
        })
    }

    /// Recursion identity of the given mode, sampled at `samples` regular λ.
    pub fn check_recursion<R: Rng>(&self, rd: &RootDatum, mode: Mode, samples: usize, rng: &mut R) -> Result<Report> {
        if self.top != rd.g() {
            return Err(Error::Domain("recursion is stated for families with top G".into()));
        }
        let ok = match mode {
            Mode::Frugal => self.is_frugal(rd),
            Mode::Cofrugal => self.is_cofrugal(rd),
        };
        if !ok {
            return Err(Error::Domain(format!("family is not {:?}", mode).to_lowercase()));
        }
        let q = self.base;
        let mut rep = Report { samples, max_deviation: 0.0, witness: None };
        for _ in 0..samples {
            let lambda = rd.random_regular(rng, q, 5, 4);
            let (lhs, mut rhs, mut scale) = match mode {
                Mode::Frugal => (
                    self.get(q).eval_f64(&lambda) / theta_f(rd, q, rd.g(), &lambda),
                    0.0,
                    0.0f64,
                ),
                Mode::Cofrugal => (
                    self.get(rd.g()).eval_f64(&lambda) / hat_theta_f(rd, q, rd.g(), &lambda),
                    0.0,
                    0.0f64,
                ),
            };
            for p in rd.containing(q) {
                let term = match mode {
                    Mode::Frugal => self.restrict_to(rd, p)?.c_prime_at(rd, &lambda)? / theta_f(rd, q, p, &lambda),
                    Mode::Cofrugal => {
                        rd.eps_rel(q, p) as f64 * self.descend_to(rd, p)?.c_prime_at(rd, &lambda)?
                            / hat_theta_f(rd, p, rd.g(), &lambda)
                    }
                };
                rhs += term;
                scale = scale.max(term.abs());
            }
            let dev = (lhs - rhs).abs() / scale.max(lhs.abs()).max(1.0);
            if dev > rep.max_deviation {
                rep.max_deviation = dev;
                rep.witness = Some(lambda);
            }
        }
        Ok(rep)
    }
}

fn theta_f(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> f64 {
    rd.fd(q, p).eta() * to_f64(&theta_rat(rd, q, p, lambda))
}

fn hat_theta_f(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> f64 {
    rd.fd(q, p).eta_hat() * to_f64(&hat_theta_rat(rd, q, p, lambda))
}

/// Frugal family c_P(λ) = c_Q(λ_P).
pub fn make_frugal(rd: &RootDatum, c_q: &ExpPoly, q: Par) -> GQFamily {
    let pq = rd.proj(q);
    let members = rd.containing(q).into_iter().map(|p| (p, c_q.compose(rd.proj(p)).compose(pq))).collect();
    GQFamily { base: q, top: rd.g(), members }
}

/// Cofrugal family c_P(λ) = c_G(λ^P).
pub fn make_cofrugal(rd: &RootDatum, c_g: &ExpPoly, q: Par) -> GQFamily {
    let members = rd.containing(q).into_iter().map(|p| (p, c_g.compose(&rd.rel_proj(q, p)))).collect();
    GQFamily { base: q, top: rd.g(), members }
}

/// The family e^{⟨λ, X_R⟩}, X_R the component of X in a_R^{top}.
pub fn exp_family(rd: &RootDatum, q: Par, top: Par, x: &[Q]) -> GQFamily {
    let members = rd
        .between(q, top)
        .into_iter()
        .map(|r| (r, ExpPoly::exp(rd.rel_proj(r, top).mul_vec(x))))
        .collect();
    GQFamily { base: q, top, members }
}

pub fn constant_family(rd: &RootDatum, q: Par) -> GQFamily {
    let members = rd.containing(q).into_iter().map(|p| (p, ExpPoly::one(rd.dim))).collect();
    GQFamily { base: q, top: rd.g(), members }
}

/// Splitting identity (cd)′_Q(λ) = Σ_P (c^P)′_{M∩Q}(λ) d′_P(λ_P) at sampled λ.
/// For d not frugal, d′_P is formed from the unrestricted d_{P′}(λ), which is
/// what the derivation from the recursion produces; for frugal d the two agree.
pub fn product_split<R: Rng>(rd: &RootDatum, c: &GQFamily, d: &GQFamily, samples: usize, rng: &mut R) -> Result<Report> {
    if c.base != d.base || c.top != rd.g() || d.top != rd.g() {
        return Err(Error::Domain("families must share Q and have top G".into()));
    }
    let frugal_d = d.is_frugal(rd);
    if !c.is_cofrugal(rd) && !frugal_d {
        return Err(Error::Domain("splitting needs c cofrugal or d frugal".into()));
    }
    let cd = c.mul(d)?;
    let q = c.base;
    let mut rep = Report { samples, max_deviation: 0.0, witness: None };
    for _ in 0..samples {
        let lambda = rd.random_regular(rng, q, 5, 4);
        let lhs = cd.c_prime_at(rd, &lambda)?;
        let mut rhs = 0.0;
        let mut scale = lhs.abs();
        for p in rd.containing(q) {
            let dp = if frugal_d { d.restrict_to(rd, p)? } else { d.above(rd, p)? };
            let term = c.descend_to(rd, p)?.c_prime_at(rd, &lambda)? * dp.c_prime_at(rd, &lambda)?;
            rhs += term;
            scale = scale.max(term.abs());
        }
        let dev = (lhs - rhs).abs() / scale.max(1.0);
        if dev > rep.max_deviation {
            rep.max_deviation = dev;
            rep.witness = Some(lambda);
        }
    }
    Ok(rep)
}

/// μ ∈ a_Q^P with ⟨μ, ϖ̌_α⟩ = ⟨λ, ϖ̌_α⟩ for α ∈ Δ_Q^P, where λ ∈ a_Q^{top}.
pub fn split_argument(rd: &RootDatum, q: Par, p: Par, top: Par, lambda: &[Q]) -> Vec<Q> {
    let inner = rd.fd(q, p);
    let outer = rd.fd(q, top);
    let mut mu = vec![Q::zero(); rd.dim];
    for (k, &i) in inner.idx.iter().enumerate() {
        let j = outer.idx.iter().position(|&t| t == i).expect("nested index sets");
        let s = dot(lambda, &outer.coweights[j]);
        for t in 0..rd.dim {
            mu[t] += &s * &inner.roots[k][t];
        }
    }
    mu
}

/// Exact value Σ c·√r·e^{a}, keyed by (a, squarefree r).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymVal {
    pub terms: BTreeMap<(Q, BigInt), Q>,
}

impl SymVal {
    pub fn zero() -> SymVal {
        SymVal::default()
    }

    fn push(&mut self, key: (Q, BigInt), c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// f(μ) for an exponential polynomial f.
    pub fn of_exppoly(f: &ExpPoly, mu: &[Q]) -> SymVal {
        let mut v = SymVal::zero();
        for (x, p) in &f.terms {
            v.push((dot(mu, x), BigInt::one()), p.eval(mu));
        }
        v
    }

    pub fn add(&self, o: &SymVal) -> SymVal {
        let mut v = self.clone();
        for (k, c) in &o.terms {
            v.push(k.clone(), c.clone());
        }
        v
    }

    pub fn scale(&self, s: &Q) -> SymVal {
        let mut v = SymVal::zero();
        for (k, c) in &self.terms {
            v.push(k.clone(), c * s);
        }
        v
    }

    /// Multiply by √s for a positive rational s.
    pub fn mul_sqrt(&self, s: &Q) -> SymVal {
        let mut v = SymVal::zero();
        for ((a, r), c) in &self.terms {
            let prod = s * Q::from_integer(r.clone());
            let k = square_class(&prod);
            let rest = rational_sqrt(&(prod / Q::from_integer(k.clone()))).expect("square by construction");
            v.push((a.clone(), k), c * rest);
        }
        v
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|((a, r), c)| to_f64(c) * to_f64(&Q::from_integer(r.clone())).sqrt() * to_f64(a).exp())
            .sum()
    }
}

/// Value attached to a parabolic P′ ⊇ Q, a function of μ ∈ a_Q^{P′}.
pub type ThetaValues<'a> = dyn Fn(Par, &[Q]) -> SymVal + 'a;

fn inv_hat_theta(rd: &RootDatum, p: Par, top: Par, lambda: &[Q], v: SymVal) -> SymVal {
    let fd = rd.fd(p, top);
    v.scale(&(Q::one() / hat_theta_rat(rd, p, top, lambda))).mul_sqrt(&(Q::one() / fd.eta_hat_sq.clone()))
}

/// Forward transform: Σ_{Q⊆P⊆top} ε_P^{top} f_P(μ^{P/Q}) / θ̂_P^{top}(μ).
pub fn theta_forward(rd: &RootDatum, q: Par, f: &ThetaValues, top: Par, lambda: &[Q]) -> SymVal {
    rd.between(q, top).into_iter().fold(SymVal::zero(), |acc, p| {
        let v = f(p, &split_argument(rd, q, p, top, lambda)).scale(&qi(rd.eps_rel(p, top) as i64));
        acc.add(&inv_hat_theta(rd, p, top, lambda, v))
    })
}

/// Inverse transform: Σ_{Q⊆P⊆top} g_P(μ^{P/Q}) / θ̂_P^{top}(μ).
pub fn theta_inverse(rd: &RootDatum, q: Par, g: &ThetaValues, top: Par, lambda: &[Q]) -> SymVal {
    rd.between(q, top).into_iter().fold(SymVal::zero(), |acc, p| {
        let v = g(p, &split_argument(rd, q, p, top, lambda));
        acc.add(&inv_hat_theta(rd, p, top, lambda, v))
    })
}

/// Evaluates ExpPoly values, indexed by parabolic, as transform inputs.
pub fn values_from_exppolys(vals: &BTreeMap<Par, ExpPoly>) -> impl Fn(Par, &[Q]) -> SymVal + '_ {
    move |p, mu| vals.get(&p).map(|e| SymVal::of_exppoly(e, mu)).unwrap_or_default()
}

pub fn random_poly<R: Rng>(rng: &mut R, nvars: usize, max_deg: u32, nterms: usize) -> Poly {
    let mut p = Poly::zero(nvars);
    for _ in 0..nterms {
        let mut e = vec![0u32; nvars];
        let deg = rng.gen_range(0..=max_deg);
        for _ in 0..deg {
            e[rng.gen_range(0..nvars)] += 1;
        }
        p = p.add(&Poly::monomial(e, qi(rng.gen_range(-4..=4))));
    }
    p
}

/// Random ExpPoly supported on a_Q^{top}.
pub fn random_exppoly<R: Rng>(rd: &RootDatum, rng: &mut R, q: Par, top: Par, nterms: usize) -> ExpPoly {
    let pr = rd.rel_proj(q, top);
    let mut terms = Vec::new();
    for _ in 0..nterms {
        let x = pr.mul_vec(&rd.random_in(rng, q, 3, 2));
        terms.push((x, random_poly(rng, rd.dim, 2, 2)));
    }
    ExpPoly::from_terms(rd.dim, terms).compose(&pr)
}

/// Random compatible family: a sum of products of frugal and cofrugal pieces.
pub fn random_family<R: Rng>(rd: &RootDatum, rng: &mut R, q: Par) -> GQFamily {
    let mut fam: Option<GQFamily> = None;
    for _ in 0..2 {
        let a = make_frugal(rd, &random_exppoly(rd, rng, q, rd.g(), 2), q);
        let b = make_cofrugal(rd, &random_exppoly(rd, rng, q, rd.g(), 2), q);
        let prod = a.mul(&b).expect("same base");
        fam = Some(match fam {
            None => prod,
            Some(f) => f.add(&prod).expect("same base"),
        });
    }
    fam.expect("nonempty")
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exponent: Vec<String>,
    /// monomials as (exponent vector, coefficient)
    pub poly: Vec<(Vec<u32>, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyJson {
    pub group: String,
    pub base: Vec<usize>,
    #[serde(default)]
    pub top: Option<Vec<usize>>,
    /// keyed by the parabolic's comma-separated simple-root indices ("" for P_0)
    pub members: BTreeMap<String, Vec<TermJson>>,
}

fn parse_par(s: &str) -> Result<Par> {
    let idx: std::result::Result<Vec<usize>, _> =
        s.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<usize>()).collect();
    let idx = idx.map_err(|_| Error::Config(format!("bad parabolic label {s:?}")))?;
    Ok(Par::from_indices(&idx))
}

fn parse_vec(v: &[String]) -> Result<Vec<Q>> {
    v.iter().map(|s| crate::rat::parse_q(s).ok_or_else(|| Error::Config(format!("bad rational {s:?}")))).collect()
}

impl FamilyJson {
    pub fn build(&self, rd: &RootDatum) -> Result<GQFamily> {
        let base = Par::from_indices(&self.base);
        let top = self.top.as_ref().map(|t| Par::from_indices(t)).unwrap_or(rd.g());
        let mut members = BTreeMap::new();
        for (k, terms) in &self.members {
            let p = parse_par(k)?;
            let mut ts = Vec::new();
            for t in terms {
                let x = parse_vec(&t.exponent)?;
                if x.len() != rd.dim {
                    return Err(Error::Config("exponent has wrong length".into()));
                }
                let mut poly = Poly::zero(rd.dim);
                for (e, c) in &t.poly {
                    if e.len() != rd.dim {
                        return Err(Error::Config("monomial has wrong length".into()));
                    }
                    let c = crate::rat::parse_q(c).ok_or_else(|| Error::Config(format!("bad rational {c:?}")))?;
                    poly = poly.add(&Poly::monomial(e.clone(), c));
                }
                ts.push((x, poly));
            }
            members.insert(p, ExpPoly::from_terms(rd.dim, ts));
        }
        GQFamily::new(rd, base, top, members)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;
    use crate::rootspace::RootType;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn constant_family_values() {
        for label in ["a1", "a2", "c2", "a3"] {
            let rd = RootDatum::from_label(label).unwrap();
            for q in rd.all_parabolics() {
                let f = constant_family(&rd, q);
                f.check_compatible(&rd).unwrap();
                let v = f.c_prime(&rd, &crate::cones::default_ray(&rd, q), 1, 1e-9).unwrap().value;
                let expect = if q == rd.g() { 1.0 } else { 0.0 };
                assert!((v - expect).abs() < 1e-9, "{label} {q:?} {v}");
            }
        }
    }

    #[test]
    fn frugal_exp_family_matches_explicit() {
        let rd = RootDatum::new(RootType::A, 2).unwrap();
        let x = vec![qi(2), qf(-1, 2), qf(-3, 2)];
        let f = make_frugal(&rd, &ExpPoly::exp(x.clone()), rd.p0());
        let e = exp_family(&rd, rd.p0(), rd.g(), &x);
        assert_eq!(f, GQFamily::new(&rd, rd.p0(), rd.g(), e.members.clone()).unwrap());
        assert!(f.is_frugal(&rd));
        f.check_compatible(&rd).unwrap();
    }

    #[test]
    fn random_families_are_holomorphic() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let rd = RootDatum::new(RootType::C, 2).unwrap();
        let f = random_family(&rd, &mut rng, rd.p0());
        f.check_compatible(&rd).unwrap();
        let a = f.c_prime(&rd, &rd.random_regular(&mut rng, rd.p0(), 5, 3), 0, 1e-9).unwrap().value;
        let b = f.c_prime(&rd, &rd.random_regular(&mut rng, rd.p0(), 5, 3), 0, 1e-9).unwrap().value;
        assert!((a - b).abs() < 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn incompatible_family_rejected() {
        let rd = RootDatum::new(RootType::A, 1).unwrap();
        let mut m = BTreeMap::new();
        m.insert(rd.p0(), ExpPoly::exp(vec![qi(1), qi(-1)]));
        m.insert(rd.g(), ExpPoly::exp(vec![qi(0), qi(0)]).add(&ExpPoly::one(2)));
        let f = GQFamily::new(&rd, rd.p0(), rd.g(), m).unwrap();
        assert!(f.check_compatible(&rd).is_err());
        let e = f.c_prime(&rd, &[qi(1), qi(-1)], 0, 1e-9).unwrap_err();
        assert_eq!(e.reason(), "incompatible_family");
    }
}
