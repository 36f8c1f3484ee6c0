//! Chamber indicators, their Fourier-side polynomials, the compactly supported
//! combinations Γ′ and Γ″, truncation signs and the weight factors v and w.

use crate::error::{Error, Result};
use crate::gqfam::{exp_family, GQFamily};
use crate::linalg::Mat;
use crate::rat::{dot, to_f64, vsub, Q};
use crate::rootspace::{Par, RootDatum};
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Truncation parameter T ∈ a_{P_0}; its components T_P are projections.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncationParam {
    pub t0: Vec<Q>,
}

impl TruncationParam {
    pub fn new(t0: Vec<Q>) -> TruncationParam {
        TruncationParam { t0 }
    }

    pub fn at(&self, rd: &RootDatum, p: Par) -> Vec<Q> {
        rd.proj(p).mul_vec(&self.t0)
    }
}

fn all_positive(funcs: &[Vec<Q>], h: &[Q]) -> bool {
    funcs.iter().all(|f| dot(f, h).is_positive())
}

/// τ_Q^P(H): 1 iff α(H) > 0 for every α ∈ Δ_Q^P.
pub fn tau(rd: &RootDatum, q: Par, p: Par, h: &[Q]) -> Result<u8> {
    let fd = rd.fundamental_data(q, p)?;
    Ok(all_positive(&fd.roots, h) as u8)
}

/// τ̂_Q^P(H): 1 iff ϖ(H) > 0 for every ϖ ∈ Δ̂_Q^P.
pub fn hat_tau(rd: &RootDatum, q: Par, p: Par, h: &[Q]) -> Result<u8> {
    let fd = rd.fundamental_data(q, p)?;
    Ok(all_positive(&fd.weights, h) as u8)
}

/// Rational part ∏⟨λ, α̌⟩ of θ_Q^P(λ).
pub fn theta_rat(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> Q {
    rd.fd(q, p).coroots.iter().fold(Q::from_integer(1.into()), |acc, v| acc * dot(lambda, v))
}

/// Rational part ∏⟨λ, ϖ̌⟩ of θ̂_Q^P(λ).
pub fn hat_theta_rat(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> Q {
    rd.fd(q, p).coweights.iter().fold(Q::from_integer(1.into()), |acc, v| acc * dot(lambda, v))
}

pub fn theta(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> Result<f64> {
    let fd = rd.fundamental_data(q, p)?;
    Ok(fd.eta() * to_f64(&theta_rat(rd, q, p, lambda)))
}

pub fn hat_theta(rd: &RootDatum, q: Par, p: Par, lambda: &[Q]) -> Result<f64> {
    let fd = rd.fundamental_data(q, p)?;
    Ok(fd.eta_hat() * to_f64(&hat_theta_rat(rd, q, p, lambda)))
}

/// Γ′_Q(H, X) = Σ_{P ⊇ Q} ε_P τ_Q^P(H) τ̂_P(H − X).
pub fn gamma_prime(rd: &RootDatum, q: Par, h: &[Q], x: &[Q]) -> i32 {
    let hx = vsub(h, x);
    rd.containing(q)
        .into_iter()
        .filter(|&p| all_positive(&rd.fd(q, p).roots, h) && all_positive(&rd.fd(p, rd.g()).weights, &hx))
        .map(|p| rd.eps(p))
        .sum()
}

/// Γ″_Q(H, X) = Σ_{P ⊇ Q} ε_P τ_Q^P(H − X) τ̂_P(H).
pub fn gamma_dprime(rd: &RootDatum, q: Par, h: &[Q], x: &[Q]) -> i32 {
    let hx = vsub(h, x);
    rd.containing(q)
        .into_iter()
        .filter(|&p| all_positive(&rd.fd(q, p).roots, &hx) && all_positive(&rd.fd(p, rd.g()).weights, h))
        .map(|p| rd.eps(p))
        .sum()
}

/// Linear functionals whose zero sets (shifted by X) bound the cells on which
/// Γ′_Q(·, X) and Γ″_Q(·, X) are constant.
pub fn wall_functionals(rd: &RootDatum, q: Par) -> Vec<Vec<Q>> {
    let mut out: Vec<Vec<Q>> = Vec::new();
    for p in rd.containing(q) {
        for f in rd.fd(q, p).roots.iter().chain(&rd.fd(p, rd.g()).weights) {
            if !out.contains(f) {
                out.push(f.clone());
            }
        }
    }
    out
}

/// True if H avoids every wall through 0 and through X.
pub fn off_walls(rd: &RootDatum, q: Par, h: &[Q], x: &[Q]) -> bool {
    let hx = vsub(h, x);
    wall_functionals(rd, q).iter().all(|f| !dot(f, h).is_zero() && !dot(f, &hx).is_zero())
}

/// Deterministic regular direction used to evaluate families at λ = 0.
pub fn default_ray(rd: &RootDatum, q: Par) -> Vec<Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + q.0 as u64);
    rd.random_regular(&mut rng, q, 9, 7)
}

/// v_Q(X) relative to the Levi of `top`, via the regularised value at λ = 0 of
/// the family e^{⟨λ, X_P⟩}.
pub fn v_weight_rel(rd: &RootDatum, q: Par, top: Par, x: &[Q], tol: f64) -> Result<f64> {
    if q == top {
        return Ok(1.0);
    }
    let fam: GQFamily = exp_family(rd, q, top, x);
    let ray = default_ray(rd, q);
    Ok(fam.c_prime(rd, &ray, 0, tol)?.value)
}

/// v_Q(X) = ∫ Γ′_Q(H, X) dH over a_Q^G.
pub fn v_weight(rd: &RootDatum, q: Par, x: &[Q]) -> Result<f64> {
    if !rd.in_space(x, q) {
        return Err(Error::Domain(format!("X must lie in a_{}", q.label())));
    }
    v_weight_rel(rd, q, rd.g(), x, 1e-9)
}

#[derive(Clone, Debug, PartialEq)]
pub struct WFactor {
    pub direct: f64,
    pub expanded: f64,
}

/// w_P^T(H) computed as v_P(T_P − H) and through the expansion over P′ ⊇ P;
/// disagreement beyond `tol` (relative to the magnitude of the terms) is an error.
pub fn w_factor(rd: &RootDatum, p: Par, t: &TruncationParam, h: &[Q], tol: f64) -> Result<WFactor> {
    if !rd.in_space(h, p) {
        return Err(Error::Domain(format!("H must lie in a_{}", p.label())));
    }
    let tp = t.at(rd, p);
    let direct = v_weight_rel(rd, p, rd.g(), &vsub(&tp, h), tol)?;
    let mut expanded = 0.0;
    let mut scale: f64 = 1.0;
    for pp in rd.containing(p) {
        let hpp = rd.rel_proj(p, pp).mul_vec(h);
        let a = v_weight_rel(rd, p, pp, &hpp, tol)?;
        let b = v_weight_rel(rd, pp, rd.g(), &t.at(rd, pp), tol)?;
        let term = rd.eps_rel(p, pp) as f64 * a * b;
        scale = scale.max(term.abs());
        expanded += term;
    }
    if (direct - expanded).abs() > tol * scale.max(direct.abs()) {
        return Err(Error::Consistency(format!(
            "w-factor formulas disagree: {direct} vs {expanded}"
        )));
    }
    Ok(WFactor { direct, expanded })
}

/// τ̂_P^T at the point H ∈ a_{P_0}: ε_P τ̂_P(H_P − T_P), and 1 for P = G.
pub fn hat_tau_trunc(rd: &RootDatum, p: Par, t: &TruncationParam, h: &[Q]) -> i32 {
    if p == rd.g() {
        return 1;
    }
    let d = vsub(h, &t.t0);
    if all_positive(&rd.fd(p, rd.g()).weights, &d) {
        rd.eps(p)
    } else {
        0
    }
}

/// Sum of τ̂_P^T(H) over the parabolics assigned to the label `target`.
pub fn chi_truncation<L: PartialEq>(
    rd: &RootDatum,
    assignment: &[(Par, L)],
    target: &L,
    t: &TruncationParam,
    h: &[Q],
) -> i32 {
    assignment.iter().filter(|(_, l)| l == target).map(|(p, _)| hat_tau_trunc(rd, *p, t, h)).sum()
}

/// Γ′_Q(·, X) in the coordinates c_α = α(H), α ∈ Δ_Q, evaluated in f64.
struct GammaEval {
    n: usize,
    // (ε_P, conditions f·c > offset)
    checks: Vec<(f64, Vec<(Vec<f64>, f64)>)>,
}

impl GammaEval {
    fn new(rd: &RootDatum, q: Par, x: &[Q]) -> GammaEval {
        let fdq = rd.fd(q, rd.g());
        let in_c = |f: &Vec<Q>| -> Vec<f64> { fdq.coweights.iter().map(|cw| to_f64(&dot(f, cw))).collect() };
        let checks = rd
            .containing(q)
            .into_iter()
            .map(|p| {
                let mut conds: Vec<(Vec<f64>, f64)> = rd.fd(q, p).roots.iter().map(|r| (in_c(r), 0.0)).collect();
                conds.extend(rd.fd(p, rd.g()).weights.iter().map(|w| (in_c(w), to_f64(&dot(w, x)))));
                (rd.eps(p) as f64, conds)
            })
            .collect();
        GammaEval { n: fdq.dim(), checks }
    }

    fn eval(&self, c: &[f64]) -> f64 {
        self.checks
            .iter()
            .filter(|(_, conds)| conds.iter().all(|(f, off)| f.iter().zip(c).map(|(a, b)| a * b).sum::<f64>() > *off))
            .map(|(e, _)| e)
            .sum()
    }
}

/// Vertices, in the coordinates c_α = α(H) (α ∈ Δ_Q), of the hyperplane
/// arrangement on whose chambers Γ′_Q(·, X) is constant.
pub fn arrangement_vertices(rd: &RootDatum, q: Par, x: &[Q]) -> Vec<Vec<f64>> {
    let fd = rd.fd(q, rd.g());
    let n = fd.dim();
    let mut planes: Vec<(Vec<Q>, Q)> = Vec::new();
    for f in wall_functionals(rd, q) {
        let coeffs: Vec<Q> = fd.coweights.iter().map(|cw| dot(&f, cw)).collect();
        for off in [Q::zero(), dot(&f, x)] {
            let pl = (coeffs.clone(), off);
            if !planes.contains(&pl) {
                planes.push(pl);
            }
        }
    }
    let m = planes.len();
    let mut out: Vec<Vec<Q>> = Vec::new();
    if n == 0 || m < n {
        return vec![];
    }
    let mut idx: Vec<usize> = (0..n).collect();
    loop {
        let rows: Vec<Vec<Q>> = idx.iter().map(|&i| planes[i].0.clone()).collect();
        let a = Mat::from_rows(&rows);
        if a.rank() == n {
            let b: Vec<Q> = idx.iter().map(|&i| planes[i].1.clone()).collect();
            if let Some(sol) = a.solve(&b) {
                if !out.contains(&sol) {
                    out.push(sol);
                }
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out.iter().map(|v| v.iter().map(to_f64).collect()).collect();
            }
            k -= 1;
            if idx[k] < m - n + k {
                idx[k] += 1;
                for j in k + 1..n {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Bounding box of the support of Γ′_Q(·, X) in the coordinates c_α: the
/// arrangement vertices near which Γ′ takes a nonzero value.
pub fn support_box(rd: &RootDatum, q: Par, x: &[Q]) -> Vec<(f64, f64)> {
    let ge = GammaEval::new(rd, q, x);
    let n = ge.n;
    let verts = arrangement_vertices(rd, q, x);
    let diam = verts.iter().flatten().fold(1.0f64, |m, v| m.max(v.abs()));
    let delta = 1e-7 * diam;
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0c5);
    let mut lo = vec![f64::INFINITY; n];
    let mut hi = vec![f64::NEG_INFINITY; n];
    for v in &verts {
        let mut hit = false;
        for _ in 0..256 {
            let c: Vec<f64> = v.iter().map(|a| a + delta * (2.0 * rng.gen::<f64>() - 1.0)).collect();
            if ge.eval(&c) != 0.0 {
                hit = true;
                break;
            }
        }
        if hit {
            for k in 0..n {
                lo[k] = lo[k].min(v[k]);
                hi[k] = hi[k].max(v[k]);
            }
        }
    }
    if lo.iter().any(|a| a.is_infinite()) {
        return vec![(0.0, 0.0); n];
    }
    lo.into_iter().zip(hi).collect()
}

/// Stratified Monte-Carlo estimate of ∫ Γ′_Q(H, X) dH with a fixed seed.
pub fn mc_v_weight(rd: &RootDatum, q: Par, x: &[Q], samples: usize, seed: u64) -> f64 {
    if q == rd.g() {
        return 1.0;
    }
    let fdq = rd.fd(q, rd.g());
    let ge = GammaEval::new(rd, q, x);
    let n = ge.n;
    let bx = support_box(rd, q, x);
    let pad: Vec<(f64, f64)> = bx
        .iter()
        .map(|&(a, b)| {
            let w = (b - a).max(1e-12);
            (a - 1e-6 * w, b + 1e-6 * w)
        })
        .collect();
    let box_vol: f64 = pad.iter().map(|(a, b)| b - a).product();
    let per_axis = ((samples as f64).powf(1.0 / n as f64)).floor().max(1.0) as usize;
    let strata = per_axis.pow(n as u32);
    let per_stratum = samples.div_ceil(strata);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut total = 0.0f64;
    let mut count = 0usize;
    let mut c = vec![0.0f64; n];
    for s in 0..strata {
        let mut cell = s;
        let mut base = vec![0usize; n];
        for b in base.iter_mut() {
            *b = cell % per_axis;
            cell /= per_axis;
        }
        for _ in 0..per_stratum {
            for k in 0..n {
                let u: f64 = rng.gen();
                let (a, b) = pad[k];
                c[k] = a + (b - a) * (base[k] as f64 + u) / per_axis as f64;
            }
            total += ge.eval(&c);
            count += 1;
        }
    }
    box_vol * total / count as f64 / fdq.eta_hat()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{qf, qi, vscale};
    use crate::rootspace::RootType;

    #[test]
    fn rank_one_segment() {
        let rd = RootDatum::new(RootType::A, 1).unwrap();
        let ac = rd.simple_coroots[0].clone();
        let q = rd.p0();
        assert_eq!(gamma_prime(&rd, q, &vscale(&ac, &qf(1, 2)), &ac), 1);
        assert_eq!(gamma_prime(&rd, q, &vscale(&ac, &qf(3, 2)), &ac), 0);
        assert_eq!(gamma_prime(&rd, q, &vscale(&ac, &qf(-1, 2)), &ac), 0);
        let v = v_weight(&rd, q, &vscale(&ac, &qi(3))).unwrap();
        assert!((v - 3.0 * 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn tau_at_origin() {
        let rd = RootDatum::new(RootType::A, 2).unwrap();
        let z = vec![qi(0); 3];
        assert_eq!(tau(&rd, rd.p0(), rd.g(), &z).unwrap(), 0);
        assert_eq!(tau(&rd, rd.g(), rd.g(), &z).unwrap(), 1);
        assert!(tau(&rd, rd.g(), rd.p0(), &z).is_err());
    }

    #[test]
    fn trunc_sign_for_g_and_maximal() {
        let rd = RootDatum::new(RootType::A, 2).unwrap();
        let t = TruncationParam::new(vec![qi(0); 3]);
        let h = vec![qi(5), qi(1), qi(-6)];
        assert_eq!(hat_tau_trunc(&rd, rd.g(), &t, &h), 1);
        assert_eq!(hat_tau_trunc(&rd, Par(1), &t, &h), -1);
    }
}
