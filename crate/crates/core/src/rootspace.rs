//! Root data of split types A_n and C_n (n ≤ 3), standard parabolics and the
//! spaces a_P with their projections, roots, coroots, weights and coweights.

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::rat::{dot, fmt_q, qi, to_f64, to_f64_vec, vsub, Q};
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A,
    C,
}

/// Standard parabolic, encoded by the set of simple roots of its Levi
/// component as a bit mask. The empty set is the minimal parabolic, the full
/// set is G itself.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Par(pub u32);

impl Par {
    pub fn from_indices(idx: &[usize]) -> Par {
        Par(idx.iter().fold(0, |m, &i| m | (1 << i)))
    }

    /// `self ⊇ o` as parabolics.
    pub fn contains(self, o: Par) -> bool {
        self.0 & o.0 == o.0
    }

    pub fn size(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn label(self) -> String {
        let v: Vec<String> = self.indices().iter().map(|i| (i + 1).to_string()).collect();
        format!("{{{}}}", v.join(","))
    }
}

/// Roots, coroots, weights and coweights of the pair lower ⊆ upper, all
/// realised inside the subspace a_lower^upper of the ambient space.
#[derive(Clone, Debug)]
pub struct FundamentalData {
    pub lower: Par,
    pub upper: Par,
    pub idx: Vec<usize>,
    pub roots: Vec<Vec<Q>>,
    pub coroots: Vec<Vec<Q>>,
    pub weights: Vec<Vec<Q>>,
    pub coweights: Vec<Vec<Q>>,
    pub eta_sq: Q,
    pub eta_hat_sq: Q,
    pub roots_f: Vec<Vec<f64>>,
    pub coroots_f: Vec<Vec<f64>>,
    pub weights_f: Vec<Vec<f64>>,
    pub coweights_f: Vec<Vec<f64>>,
}

impl FundamentalData {
    pub fn dim(&self) -> usize {
        self.idx.len()
    }

    pub fn eta(&self) -> f64 {
        to_f64(&self.eta_sq).sqrt()
    }

    pub fn eta_hat(&self) -> f64 {
        to_f64(&self.eta_hat_sq).sqrt()
    }
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    pub kind: RootType,
    pub rank: usize,
    /// Dimension of the ambient coordinate space.
    pub dim: usize,
    pub simple_roots: Vec<Vec<Q>>,
    pub simple_coroots: Vec<Vec<Q>>,
    pub cartan: Mat,
    /// Gram matrix of the simple coroots.
    pub gram: Mat,
    proj: Vec<Mat>,
    proj_f: Vec<Vec<Vec<f64>>>,
    fdata: Vec<Option<FundamentalData>>,
}

#[derive(Serialize)]
pub struct RootDatumJson {
    #[serde(rename = "type")]
    pub kind: RootType,
    pub rank: usize,
    pub simple_roots: Vec<Vec<String>>,
    pub coroots: Vec<Vec<String>>,
    pub gram: Vec<Vec<String>>,
}

fn strs(v: &[Vec<Q>]) -> Vec<Vec<String>> {
    v.iter().map(|r| r.iter().map(fmt_q).collect()).collect()
}

/// Orthogonal projection onto the span of the given vectors.
fn projector(dim: usize, basis: &[Vec<Q>]) -> Mat {
    if basis.is_empty() {
        return Mat::zeros(dim, dim);
    }
    let b = Mat::from_cols(dim, basis);
    let g = b.transpose().mul(&b).inverse().expect("independent basis");
    b.mul(&g).mul(&b.transpose())
}

/// Vectors in span(`span`) dual to `pair` under the dot product.
fn dual_in_span(span: &[Vec<Q>], pair: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let k = span.len();
    let mut m = Mat::zeros(k, k);
    for j in 0..k {
        for l in 0..k {
            m.set(j, l, dot(&pair[j], &span[l]));
        }
    }
    let inv = m.inverse().expect("nondegenerate pairing");
    (0..k)
        .map(|i| {
            let dim = span[0].len();
            let mut v = vec![Q::zero(); dim];
            for l in 0..k {
                let c = inv.get(l, i);
                if c.is_zero() {
                    continue;
                }
                for t in 0..dim {
                    v[t] += c * &span[l][t];
                }
            }
            v
        })
        .collect()
}

impl RootDatum {
    pub fn new(kind: RootType, rank: usize) -> Result<RootDatum> {
        if !(1..=3).contains(&rank) {
            return Err(Error::Config(format!("rank {rank} outside 1..=3")));
        }
        let dim = match kind {
            RootType::A => rank + 1,
            RootType::C => rank,
        };
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        for i in 0..rank {
            let mut a = vec![Q::zero(); dim];
            let mut c = vec![Q::zero(); dim];
            match kind {
                RootType::A => {
                    a[i] = qi(1);
                    a[i + 1] = qi(-1);
                    c = a.clone();
                }
                RootType::C => {
                    if i + 1 < rank {
                        a[i] = qi(1);
                        a[i + 1] = qi(-1);
                        c = a.clone();
                    } else {
                        a[i] = qi(2);
                        c[i] = qi(1);
                    }
                }
            }
            roots.push(a);
            coroots.push(c);
        }
        let mut cartan = Mat::zeros(rank, rank);
        for i in 0..rank {
            for j in 0..rank {
                cartan.set(i, j, dot(&roots[i], &coroots[j]));
            }
        }
        let gram = Mat::gram(&coroots);
        let mut rd = RootDatum {
            kind,
            rank,
            dim,
            simple_roots: roots,
            simple_coroots: coroots,
            cartan,
            gram,
            proj: Vec::new(),
            proj_f: Vec::new(),
            fdata: Vec::new(),
        };
        let n = 1usize << rank;
        let g_coweights = dual_in_span(&rd.simple_coroots, &rd.simple_roots);
        for m in 0..n {
            let basis: Vec<Vec<Q>> =
                (0..rank).filter(|i| m & (1 << i) == 0).map(|i| g_coweights[i].clone()).collect();
            let p = projector(dim, &basis);
            rd.proj_f.push((0..dim).map(|i| to_f64_vec(&p.row(i))).collect());
            rd.proj.push(p);
        }
        rd.fdata = vec![None; n * n];
        for lo in 0..n {
            for up in 0..n {
                if up & lo == lo {
                    let fd = rd.compute_fdata(Par(lo as u32), Par(up as u32));
                    rd.fdata[lo * n + up] = Some(fd);
                }
            }
        }
        Ok(rd)
    }

    /// Parses labels such as `a2` or `C3`.
    pub fn from_label(s: &str) -> Result<RootDatum> {
        let s = s.trim().to_ascii_lowercase();
        let (t, r) = s.split_at(1);
        let kind = match t {
            "a" => RootType::A,
            "c" => RootType::C,
            _ => return Err(Error::Config(format!("unknown root type {t}"))),
        };
        let rank: usize = r.parse().map_err(|_| Error::Config(format!("bad rank in {s}")))?;
        RootDatum::new(kind, rank)
    }

    pub fn label(&self) -> String {
        let t = match self.kind {
            RootType::A => "a",
            RootType::C => "c",
        };
        format!("{t}{}", self.rank)
    }

    pub fn to_json(&self) -> RootDatumJson {
        RootDatumJson {
            kind: self.kind,
            rank: self.rank,
            simple_roots: strs(&self.simple_roots),
            coroots: strs(&self.simple_coroots),
            gram: strs(&(0..self.rank).map(|i| self.gram.row(i)).collect::<Vec<_>>()),
        }
    }

    fn compute_fdata(&self, lower: Par, upper: Par) -> FundamentalData {
        let rel = self.proj[lower.0 as usize].sub(&self.proj[upper.0 as usize]);
        let idx: Vec<usize> = (0..self.rank)
            .filter(|&i| upper.0 & (1 << i) != 0 && lower.0 & (1 << i) == 0)
            .collect();
        let roots: Vec<Vec<Q>> = idx.iter().map(|&i| rel.mul_vec(&self.simple_roots[i])).collect();
        let coroots: Vec<Vec<Q>> =
            idx.iter().map(|&i| rel.mul_vec(&self.simple_coroots[i])).collect();
        let (weights, coweights, eta_sq, eta_hat_sq) = if idx.is_empty() {
            (Vec::new(), Vec::new(), Q::one(), Q::one())
        } else {
            let w = dual_in_span(&coroots, &coroots);
            let cw = dual_in_span(&coroots, &roots);
            let e = Mat::gram(&coroots).det().recip();
            let eh = Mat::gram(&cw).det().recip();
            (w, cw, e, eh)
        };
        let f = |v: &Vec<Vec<Q>>| v.iter().map(|x| to_f64_vec(x)).collect::<Vec<_>>();
        FundamentalData {
            lower,
            upper,
            roots_f: f(&roots),
            coroots_f: f(&coroots),
            weights_f: f(&weights),
            coweights_f: f(&coweights),
            idx,
            roots,
            coroots,
            weights,
            coweights,
            eta_sq,
            eta_hat_sq,
        }
    }

    pub fn g(&self) -> Par {
        Par((1u32 << self.rank) - 1)
    }

    pub fn p0(&self) -> Par {
        Par(0)
    }

    pub fn all_parabolics(&self) -> Vec<Par> {
        (0..(1u32 << self.rank)).map(Par).collect()
    }

    /// Standard parabolics P with lower ⊆ P ⊆ upper.
    pub fn between(&self, lower: Par, upper: Par) -> Vec<Par> {
        self.all_parabolics().into_iter().filter(|p| p.contains(lower) && upper.contains(*p)).collect()
    }

    pub fn containing(&self, q: Par) -> Vec<Par> {
        self.between(q, self.g())
    }

    /// dim a_P^G.
    pub fn dim_a(&self, p: Par) -> usize {
        self.rank - p.size()
    }

    /// (-1)^{dim a_P^G}.
    pub fn eps(&self, p: Par) -> i32 {
        if self.dim_a(p).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// (-1)^{dim a_Q^P}.
    pub fn eps_rel(&self, q: Par, p: Par) -> i32 {
        if (p.size() - q.size()).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Orthogonal projection of the ambient space onto a_P^G.
    pub fn proj(&self, p: Par) -> &Mat {
        &self.proj[p.0 as usize]
    }

    pub fn proj_f64(&self, p: Par, v: &[f64]) -> Vec<f64> {
        self.proj_f[p.0 as usize].iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// Orthogonal projection onto a_Q^P.
    pub fn rel_proj(&self, q: Par, p: Par) -> Mat {
        self.proj(q).sub(self.proj(p))
    }

    pub fn in_space(&self, v: &[Q], p: Par) -> bool {
        self.proj(p).mul_vec(v) == v
    }

    pub fn fundamental_data(&self, lower: Par, upper: Par) -> Result<&FundamentalData> {
        if !upper.contains(lower) {
            return Err(Error::Domain(format!("{} is not contained in {}", lower.label(), upper.label())));
        }
        let n = 1usize << self.rank;
        Ok(self.fdata[lower.0 as usize * n + upper.0 as usize].as_ref().expect("precomputed"))
    }

    pub(crate) fn fd(&self, lower: Par, upper: Par) -> &FundamentalData {
        self.fundamental_data(lower, upper).expect("nested parabolics")
    }

    /// (η², η̂²) for the pair P ⊆ P′.
    pub fn measure_constants(&self, p: Par, pp: Par) -> Result<(Q, Q)> {
        let fd = self.fundamental_data(p, pp)?;
        Ok((fd.eta_sq.clone(), fd.eta_hat_sq.clone()))
    }

    /// Splits λ ∈ a_Q into (λ^P, λ_P).
    pub fn project(&self, v: &[Q], q: Par, p: Par) -> Result<(Vec<Q>, Vec<Q>)> {
        if !p.contains(q) {
            return Err(Error::Domain(format!("{} is not contained in {}", q.label(), p.label())));
        }
        if !self.in_space(v, q) {
            return Err(Error::Domain(format!("vector does not lie in a_{}", q.label())));
        }
        let lp = self.proj(p).mul_vec(v);
        Ok((vsub(v, &lp), lp))
    }

    /// Fundamental weights ϖ_i of G (dual to the simple coroots).
    pub fn fundamental_weights(&self) -> &[Vec<Q>] {
        &self.fd(self.p0(), self.g()).weights
    }

    /// Fundamental coweights ϖ̌_i of G (dual to the simple roots).
    pub fn fundamental_coweights(&self) -> &[Vec<Q>] {
        &self.fd(self.p0(), self.g()).coweights
    }

    /// Every vector whose pairing must be nonzero for the chamber and
    /// Fourier-side functions attached to parabolics above `q` to be regular.
    pub fn singular_directions(&self, q: Par) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = Vec::new();
        for lo in self.containing(q) {
            for up in self.containing(lo) {
                let fd = self.fd(lo, up);
                for v in fd.coroots.iter().chain(&fd.coweights) {
                    if !out.contains(v) {
                        out.push(v.clone());
                    }
                }
            }
        }
        out
    }

    pub fn is_regular(&self, lambda: &[Q], q: Par) -> bool {
        self.singular_directions(q).iter().all(|v| !dot(lambda, v).is_zero())
    }

    /// Random rational element of a_Q^G off all singular hyperplanes.
    pub fn random_regular<R: Rng>(&self, rng: &mut R, q: Par, bound: i64, max_den: i64) -> Vec<Q> {
        let sing = self.singular_directions(q);
        loop {
            let v = self.random_in(rng, q, bound, max_den);
            if sing.iter().all(|s| !dot(&v, s).is_zero()) {
                return v;
            }
        }
    }

    /// Random rational element of a_Q^G, written in the basis of coweights of Q.
    pub fn random_in<R: Rng>(&self, rng: &mut R, q: Par, bound: i64, max_den: i64) -> Vec<Q> {
        let fd = self.fd(q, self.g());
        let mut v = vec![Q::zero(); self.dim];
        for cw in &fd.coweights {
            let c = Q::new(rng.gen_range(-bound..=bound).into(), rng.gen_range(1..=max_den).into());
            for t in 0..self.dim {
                v[t] += &c * &cw[t];
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    #[test]
    fn a2_cartan_and_roots() {
        let rd = RootDatum::new(RootType::A, 2).unwrap();
        assert_eq!(rd.cartan, Mat::from_i64(2, 2, &[2, -1, -1, 2]));
    }

    #[test]
    fn c2_long_root_pairing() {
        let rd = RootDatum::new(RootType::C, 2).unwrap();
        assert_eq!(rd.cartan.get(1, 0), &qi(-2));
        assert_eq!(rd.cartan.get(0, 1), &qi(-1));
    }

    #[test]
    fn a1_weight_is_half_root() {
        let rd = RootDatum::new(RootType::A, 1).unwrap();
        let w = &rd.fundamental_weights()[0];
        let a: Vec<Q> = rd.simple_roots[0].iter().map(|x| x * qf(1, 2)).collect();
        assert_eq!(w, &a);
        let (e, eh) = rd.measure_constants(rd.p0(), rd.g()).unwrap();
        assert_eq!(e, qf(1, 2));
        assert_eq!(eh, qi(2));
    }

    #[test]
    fn g_level_sets_are_empty() {
        let rd = RootDatum::new(RootType::C, 3).unwrap();
        let fd = rd.fundamental_data(rd.g(), rd.g()).unwrap();
        assert!(fd.roots.is_empty() && fd.coweights.is_empty());
        assert_eq!(rd.measure_constants(rd.g(), rd.g()).unwrap(), (qi(1), qi(1)));
    }

    #[test]
    fn unsupported_rank() {
        assert!(matches!(RootDatum::new(RootType::A, 4), Err(Error::Config(_))));
    }
}
