//! The prehomogeneous vector space u′/u″ of a nilpotent element with the
//! action of the Levi algebra g_0, relative invariants, modular characters,
//! generic stabilisers and the symmetric forms b_± of the symplectic classes
//! [2,2] and [4,2].

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::nilpotent::{image_power, jordan_type, kernel_power, AlgKind, CanonicalData, MatrixLieAlgebra, Partition};
use crate::orbitind::{random_in, FlagParabolic, DEFAULT_SEED};
use crate::poly::Poly;
use crate::rat::{fmt_q, is_rational_square, qi, rational_sqrt, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Gram matrices of b_+(u, v) = ω(u, Xv) on V_+/V_0 and of b_- on V_0/V_-,
/// with b_-(Xu, Xv) = b_+(u, v).
#[derive(Clone, Debug)]
pub struct BForms {
    pub plus_top: Subspace,
    pub plus_bottom: Subspace,
    pub minus_top: Subspace,
    pub minus_bottom: Subspace,
    /// lifts of a basis of V_+/V_0
    pub plus_basis: Vec<Vec<Q>>,
    pub plus_gram: Mat,
    pub minus_basis: Vec<Vec<Q>>,
    pub minus_gram: Mat,
}

impl BForms {
    /// b² - ac for the binary form [[a, b], [b, c]].
    pub fn discriminant(&self) -> Q {
        -self.plus_gram.det()
    }

    pub fn is_split(&self) -> bool {
        let d = self.discriminant();
        !d.is_zero() && is_rational_square(&d)
    }

    /// Isotropic vectors of b_+ in the coordinates of `plus_basis`,
    /// normalised to leading coordinate 1 and sorted. Empty when anisotropic.
    pub fn isotropic_coords(&self) -> Vec<Vec<Q>> {
        let g = &self.plus_gram;
        let (a, b, c) = (g.get(0, 0).clone(), g.get(0, 1).clone(), g.get(1, 1).clone());
        let mut out: Vec<Vec<Q>> = Vec::new();
        if a.is_zero() {
            out.push(vec![Q::one(), Q::zero()]);
            out.push(vec![c.clone(), -(&b + &b)]);
        } else if let Some(r) = rational_sqrt(&self.discriminant()) {
            for s in [r.clone(), -r] {
                out.push(vec![(-&b + s) / &a, Q::one()]);
            }
        }
        for v in out.iter_mut() {
            let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(Q::one);
            for x in v.iter_mut() {
                *x = &*x / &lead;
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Lift of an isotropic line of b_+: V_0 + <u>.
    pub fn plus_lift(&self, coords: &[Q]) -> Subspace {
        let n = self.plus_top.ambient();
        let mut u = vec![Q::zero(); n];
        for (c, b) in coords.iter().zip(&self.plus_basis) {
            for (ui, bi) in u.iter_mut().zip(b) {
                *ui += c * bi;
            }
        }
        self.plus_bottom.sum(&Subspace::span(n, &[u]))
    }
}

/// b_± for the symplectic partitions [2,2] (V_+ = V, V_0 = Ker X, V_- = 0)
/// and [4,2] (V_+ = Ker X³, V_0 = Ker X² ∩ Im X, V_- = Im X³).
pub fn b_forms(x: &Mat, alg: &MatrixLieAlgebra) -> Result<BForms> {
    let omega = match &alg.kind {
        AlgKind::Sp(j) => j.clone(),
        AlgKind::Gl => return Err(Error::Domain("b± needs a symplectic form".into())),
    };
    let n = alg.n;
    let p = jordan_type(x)?;
    let (top, v0, bottom) = match p.as_slice() {
        [2, 2] => (Subspace::full(n), kernel_power(x, 1), Subspace::zero(n)),
        [4, 2] => (kernel_power(x, 3), kernel_power(x, 2).intersect(&image_power(x, 1)), image_power(x, 3)),
        _ => return Err(Error::Domain(format!("b± is defined for [2,2] and [4,2], not {p:?}"))),
    };
    let plus_basis = top.complement_basis(&v0);
    let minus_basis = v0.complement_basis(&bottom);
    if plus_basis.len() != 2 || minus_basis.len() != 2 {
        return Err(Error::Domain("b± subquotients are not planes".into()));
    }
    let gram = |us: &[Vec<Q>], vs: &[Vec<Q>]| {
        let mut g = Mat::zeros(us.len(), vs.len());
        for (i, u) in us.iter().enumerate() {
            for (j, v) in vs.iter().enumerate() {
                g.set(i, j, omega.form(u, v));
            }
        }
        g
    };
    let xu: Vec<Vec<Q>> = plus_basis.iter().map(|u| x.mul_vec(u)).collect();
    let plus_gram = gram(&plus_basis, &xu);
    // preimages a_i with X a_i ≡ m_i mod V_-, then b_-(m_i, m_j) = ω(a_i, m_j)
    let mut cols = x.cols_vec();
    cols.extend(bottom.basis().iter().map(|b| b.iter().map(|c| -c).collect::<Vec<Q>>()));
    let sys = Mat::from_cols(n, &cols);
    let mut pre = Vec::new();
    for m in &minus_basis {
        let s = sys.solve(m).ok_or_else(|| Error::Domain("X does not map V_+/V_0 onto V_0/V_-".into()))?;
        pre.push(s[..n].to_vec());
    }
    let minus_gram = gram(&pre, &minus_basis);
    if plus_gram.transpose() != plus_gram || minus_gram.transpose() != minus_gram {
        return Err(Error::Domain("b± is not symmetric".into()));
    }
    if plus_gram.det().is_zero() {
        return Err(Error::Domain("b± is degenerate".into()));
    }
    // b_+(u_i, u_j) = b_-(X u_i, X u_j) through coordinates in the V_0/V_- basis
    let mut rel = minus_basis.clone();
    rel.extend(bottom.basis().iter().cloned());
    let relm = Mat::from_cols(n, &rel);
    let mut cmat = Mat::zeros(2, 2);
    for (j, v) in xu.iter().enumerate() {
        let c = relm.solve(v).ok_or_else(|| Error::Consistency("X V_+ not inside V_0".into()))?;
        cmat.set(0, j, c[0].clone());
        cmat.set(1, j, c[1].clone());
    }
    if cmat.transpose().mul(&minus_gram).mul(&cmat) != plus_gram {
        return Err(Error::Consistency("b_+(u, v) != b_-(Xu, Xv)".into()));
    }
    Ok(BForms { plus_top: top, plus_bottom: v0.clone(), minus_top: v0, minus_bottom: bottom, plus_basis, plus_gram, minus_basis, minus_gram })
}

/// Adjoint action of a list of matrices on the subquotient top/bottom of
/// Q^{n²}, in the coordinates of `basis` (lifts of a basis of top/bottom).
#[derive(Clone, Debug)]
pub struct LinearAction {
    pub n: usize,
    pub top: Subspace,
    pub bottom: Subspace,
    pub basis: Vec<Vec<Q>>,
    pub acting: Vec<Mat>,
    pub matrices: Vec<Mat>,
}

pub fn quotient_action(
    n: usize,
    acting: &[Mat],
    top: &Subspace,
    bottom: &Subspace,
    lifts: Option<Vec<Vec<Q>>>,
) -> Result<LinearAction> {
    if !top.contains_space(bottom) {
        return Err(Error::Domain("bottom is not inside top".into()));
    }
    let basis = lifts.unwrap_or_else(|| top.complement_basis(bottom));
    let mut cols = basis.clone();
    cols.extend(bottom.basis().iter().cloned());
    if basis.len() + bottom.dim() != top.dim() || Subspace::span(n * n, &cols) != *top {
        return Err(Error::Domain("lifts do not complete the bottom to the top".into()));
    }
    let rel = Mat::from_cols(n * n, &cols);
    let d = basis.len();
    let mut matrices = Vec::new();
    for w in acting {
        for b in bottom.basis() {
            if !bottom.contains(&Mat::commutator(w, &Mat::unflatten(n, b)).flatten()) {
                return Err(Error::Domain("subquotient is not stable".into()));
            }
        }
        let mut m = Mat::zeros(d, d);
        for (j, b) in basis.iter().enumerate() {
            let img = Mat::commutator(w, &Mat::unflatten(n, b)).flatten();
            let c = rel.solve(&img).ok_or_else(|| Error::Domain("subquotient is not stable".into()))?;
            for i in 0..d {
                m.set(i, j, c[i].clone());
            }
        }
        matrices.push(m);
    }
    Ok(LinearAction { n, top: top.clone(), bottom: bottom.clone(), basis, acting: acting.to_vec(), matrices })
}

impl LinearAction {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of an element of `top` modulo `bottom`.
    pub fn project(&self, z: &[Q]) -> Result<Vec<Q>> {
        let mut cols = self.basis.clone();
        cols.extend(self.bottom.basis().iter().cloned());
        let c = Mat::from_cols(self.n * self.n, &cols)
            .solve(z)
            .ok_or_else(|| Error::Domain("element is not in the subquotient".into()))?;
        Ok(c[..self.dim()].to_vec())
    }

    /// ρ([A, B]) = [ρ(A), ρ(B)] for all pairs of acting elements, exactly.
    pub fn is_representation(&self) -> bool {
        let n = self.n;
        let span = Mat::from_cols(n * n, &self.acting.iter().map(|a| a.flatten()).collect::<Vec<_>>());
        for (i, a) in self.acting.iter().enumerate() {
            for (j, b) in self.acting.iter().enumerate().skip(i + 1) {
                let Some(c) = span.solve(&Mat::commutator(a, b).flatten()) else { return false };
                let mut lhs = Mat::zeros(self.dim(), self.dim());
                for (ck, mk) in c.iter().zip(&self.matrices) {
                    lhs = lhs.add(&mk.scale(ck));
                }
                if lhs != Mat::commutator(&self.matrices[i], &self.matrices[j]) {
                    return false;
                }
            }
        }
        true
    }

    /// The matrix with columns ρ(W_a) ξ.
    pub fn orbit_map(&self, xi: &[Q]) -> Mat {
        let cols: Vec<Vec<Q>> = self.matrices.iter().map(|m| m.mul_vec(xi)).collect();
        Mat::from_cols(self.dim(), &cols)
    }

    pub fn orbit_rank(&self, xi: &[Q]) -> usize {
        if self.matrices.is_empty() {
            return 0;
        }
        self.orbit_map(xi).rank()
    }

    pub fn is_generic(&self, xi: &[Q]) -> bool {
        self.orbit_rank(xi) == self.dim()
    }

    /// Stabiliser of ξ as coordinate vectors over the acting basis.
    pub fn stabiliser(&self, xi: &[Q]) -> Vec<Vec<Q>> {
        if self.matrices.is_empty() {
            return Vec::new();
        }
        self.orbit_map(xi).kernel()
    }

    /// The character of p if p is a relative invariant: L_W p = ⟨dχ, W⟩ p
    /// for every acting W, as an exact polynomial identity.
    pub fn character_of(&self, p: &Poly) -> Option<Vec<Q>> {
        let (lead_e, lead_c) = p.terms.iter().next()?;
        let mut chi = Vec::new();
        for m in &self.matrices {
            let lp = p.lie_derivative(m);
            let c = lp.terms.get(lead_e).cloned().unwrap_or_else(Q::zero) / lead_c;
            if lp != p.scale(&c) {
                return None;
            }
            chi.push(c);
        }
        Some(chi)
    }

    /// Joint rational eigenvectors of the action on homogeneous polynomials
    /// of degree 1..=max_deg that are killed by the derived algebra.
    pub fn relative_invariants(&self, max_deg: u32) -> Result<Vec<RelativeInvariant>> {
        let d = self.dim();
        let mut derived: Vec<Mat> = Vec::new();
        for (i, a) in self.matrices.iter().enumerate() {
            for b in &self.matrices[i + 1..] {
                derived.push(Mat::commutator(a, b));
            }
        }
        let mut out = Vec::new();
        for deg in 1..=max_deg {
            let monos = monomials(d, deg);
            let index: std::collections::BTreeMap<&Vec<u32>, usize> =
                monos.iter().enumerate().map(|(i, e)| (e, i)).collect();
            let op = |m: &Mat| -> Mat {
                let mut mat = Mat::zeros(monos.len(), monos.len());
                for (j, e) in monos.iter().enumerate() {
                    let img = Poly::monomial(e.clone(), Q::one()).lie_derivative(m);
                    for (f, c) in &img.terms {
                        mat.set(index[f], j, c.clone());
                    }
                }
                mat
            };
            let mut rows = Vec::new();
            for m in &derived {
                let o = op(m);
                for i in 0..o.rows {
                    rows.push(o.row(i));
                }
            }
            let kern =
                if rows.is_empty() { Subspace::full(monos.len()) } else { Subspace::span(monos.len(), &Mat::from_rows(&rows).kernel()) };
            let ops: Vec<Mat> = self.matrices.iter().map(op).collect();
            let mut spaces = vec![kern];
            for o in &ops {
                let mut next = Vec::new();
                for s in spaces {
                    if s.is_zero() {
                        continue;
                    }
                    let r = restrict(o, &s)?;
                    for lam in rational_roots(&minimal_polynomial(&r))? {
                        let shifted = o.sub(&Mat::identity(o.rows).scale(&lam));
                        let ker = Subspace::kernel_of(&shifted).intersect(&s);
                        if !ker.is_zero() {
                            next.push(ker);
                        }
                    }
                }
                spaces = next;
            }
            for s in spaces {
                for v in s.basis() {
                    let mut p = Poly::zero(d);
                    for (c, e) in v.iter().zip(&monos) {
                        p = p.add(&Poly::monomial(e.clone(), c.clone()));
                    }
                    let character = self.character_of(&p).ok_or_else(|| Error::Consistency("joint eigenvector is not invariant".into()))?;
                    out.push(RelativeInvariant { name: format!("degree {deg}"), poly: p, character });
                }
            }
        }
        Ok(out)
    }

    /// Necessary test for speciality: no nonconstant relative invariant of
    /// degree at most `max_deg`.
    pub fn special_test(&self, max_deg: u32) -> Result<bool> {
        Ok(self.relative_invariants(max_deg)?.is_empty())
    }
}

fn monomials(d: usize, deg: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return if deg == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for k in (0..=deg).rev() {
        for mut rest in monomials(d - 1, deg - k) {
            rest.insert(0, k);
            out.push(rest);
        }
    }
    out
}

/// Matrix of `m` restricted to the stable subspace `s`, in the basis of `s`.
fn restrict(m: &Mat, s: &Subspace) -> Result<Mat> {
    let k = s.dim();
    let mut r = Mat::zeros(k, k);
    for (j, b) in s.basis().iter().enumerate() {
        let c = s.coords(&m.mul_vec(b)).ok_or_else(|| Error::Consistency("subspace is not stable".into()))?;
        for (i, ci) in c.into_iter().enumerate() {
            r.set(i, j, ci);
        }
    }
    Ok(r)
}

// Univariate polynomials as coefficient lists, constant term first.

/// Monic minimal polynomial of a square matrix.
pub fn minimal_polynomial(m: &Mat) -> Vec<Q> {
    let n = m.rows;
    let mut powers = vec![Mat::identity(n).flatten()];
    let mut cur = Mat::identity(n);
    loop {
        cur = cur.mul(m);
        let v = cur.flatten();
        if let Some(c) = Mat::from_cols(n * n, &powers).solve(&v) {
            let mut p: Vec<Q> = c.into_iter().map(|x| -x).collect();
            p.push(Q::one());
            return p;
        }
        powers.push(v);
    }
}

fn upoly_eval(p: &[Q], x: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
}

fn upoly_at_matrix(p: &[Q], m: &Mat) -> Mat {
    let n = m.rows;
    p.iter().rev().fold(Mat::zeros(n, n), |acc, c| acc.mul(m).add(&Mat::identity(n).scale(c)))
}

/// Quotient by (t - r) for a root r.
fn upoly_deflate(p: &[Q], r: &Q) -> Vec<Q> {
    let mut out = vec![Q::zero(); p.len() - 1];
    let mut carry = Q::zero();
    for i in (1..p.len()).rev() {
        carry = &p[i] + carry * r;
        out[i - 1] = carry.clone();
    }
    out
}

fn upoly_trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Q::zero());
    }
    p
}

fn upoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").clone();
    while r.len() >= b.len() && !(r.len() == 1 && r[0].is_zero()) {
        let c = r.last().unwrap() / &lb;
        let shift = r.len() - b.len();
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        r.pop();
        r = upoly_trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    upoly_trim(r)
}

fn upoly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (upoly_trim(a.to_vec()), upoly_trim(b.to_vec()));
    while !(b.len() == 1 && b[0].is_zero()) {
        let r = upoly_rem(&a, &b);
        a = b;
        b = r;
    }
    a
}

fn upoly_squarefree(p: &[Q]) -> bool {
    let d: Vec<Q> = p.iter().enumerate().skip(1).map(|(i, c)| c * qi(i as i64)).collect();
    d.is_empty() || upoly_gcd(p, &d).len() == 1
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            out.push(k);
            out.push(n / k);
        }
        k += 1;
    }
    out
}

/// Distinct rational roots, by the rational root test.
pub fn rational_roots(p: &[Q]) -> Result<Vec<Q>> {
    let mut p = upoly_trim(p.to_vec());
    let mut roots = Vec::new();
    if p.len() == 1 {
        return Ok(roots);
    }
    if p[0].is_zero() {
        roots.push(Q::zero());
        while p.len() > 1 && p[0].is_zero() {
            p.remove(0);
        }
    }
    if p.len() == 1 {
        return Ok(roots);
    }
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Q::from_integer(lcm.clone())).to_integer()).collect();
    let (a0, an) = (ints[0].abs().to_u64(), ints.last().unwrap().abs().to_u64());
    let (Some(a0), Some(an)) = (a0, an) else {
        return Err(Error::Inconclusive("coefficients too large for the rational root test".into()));
    };
    if a0 > 1 << 40 || an > 1 << 40 {
        return Err(Error::Inconclusive("coefficients too large for the rational root test".into()));
    }
    for num in divisors(a0) {
        for den in divisors(an) {
            for s in [1i64, -1] {
                let r = Q::new(BigInt::from(num) * s, BigInt::from(den));
                if !roots.contains(&r) && upoly_eval(&p, &r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// V = u′/u″ with the adjoint action of g_0 (and of g_1, which acts by zero).
#[derive(Clone, Debug)]
pub struct PVSpace {
    pub alg: MatrixLieAlgebra,
    pub cd: CanonicalData,
    pub partition: Partition,
    pub levi: LinearAction,
    pub unipotent: LinearAction,
}

impl PVSpace {
    pub fn dim(&self) -> usize {
        self.levi.dim()
    }

    /// Image of X, which lies in g_2.
    pub fn x_point(&self) -> Result<Vec<Q>> {
        self.levi.project(&self.cd.triple.x.flatten())
    }

    /// Projection of an element of u′.
    pub fn project(&self, z: &Mat) -> Result<Vec<Q>> {
        self.levi.project(&z.flatten())
    }

    pub fn levi_basis(&self) -> &[Mat] {
        &self.levi.acting
    }

    /// ξ as a matrix of linear forms in the coordinates of V.
    fn xi_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.alg.n;
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c: Vec<Q> = self.levi.basis.iter().map(|b| b[i * n + j].clone()).collect();
                        Poly::linear(&c)
                    })
                    .collect()
            })
            .collect()
    }
}

fn grade(cd: &CanonicalData, k: i64, n2: usize) -> Subspace {
    cd.grading.get(&k).cloned().unwrap_or_else(|| Subspace::zero(n2))
}

pub fn build_pv(cd: &CanonicalData, alg: &MatrixLieAlgebra) -> Result<PVSpace> {
    let n = alg.n;
    let levi: Vec<Mat> = cd.levi.basis().iter().map(|b| Mat::unflatten(n, b)).collect();
    let g2 = grade(cd, 2, n * n).basis().to_vec();
    let action = quotient_action(n, &levi, &cd.u1, &cd.u2, Some(g2.clone()))?;
    let g1: Vec<Mat> = grade(cd, 1, n * n).basis().iter().map(|b| Mat::unflatten(n, b)).collect();
    let unipotent = quotient_action(n, &g1, &cd.u1, &cd.u2, Some(g2))?;
    Ok(PVSpace { alg: alg.clone(), cd: cd.clone(), partition: jordan_type(&cd.triple.x)?, levi: action, unipotent })
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitCheck {
    pub generic: bool,
    pub rank: usize,
    /// stabiliser in g_0 ⊕ g_1
    pub stabiliser_dim: usize,
    pub levi_stabiliser_dim: usize,
}

/// Rank of W ↦ W·ξ over g_0 ⊕ g_1.
pub fn dense_orbit_check(pv: &PVSpace, xi: &[Q]) -> OrbitCheck {
    let mut cols: Vec<Vec<Q>> = pv.levi.matrices.iter().map(|m| m.mul_vec(xi)).collect();
    cols.extend(pv.unipotent.matrices.iter().map(|m| m.mul_vec(xi)));
    let acting = cols.len();
    let rank = if cols.is_empty() { 0 } else { Mat::from_cols(pv.dim(), &cols).rank() };
    OrbitCheck {
        generic: rank == pv.dim(),
        rank,
        stabiliser_dim: acting - rank,
        levi_stabiliser_dim: pv.levi.matrices.len() - pv.levi.orbit_rank(xi),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelativeInvariant {
    pub name: String,
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
    /// dχ on the basis of the acting algebra
    #[serde(serialize_with = "ser_qs")]
    pub character: Vec<Q>,
}

fn ser_qs<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(fmt_q))
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.terms.iter().map(|(e, c)| (e.clone(), fmt_q(c))))
}

fn pvec_apply(m: &[Vec<Poly>], v: &[Poly], d: usize) -> Vec<Poly> {
    m.iter().map(|row| row.iter().zip(v).fold(Poly::zero(d), |acc, (a, b)| acc.add(&a.mul(b)))).collect()
}

fn const_vec(v: &[Q], d: usize) -> Vec<Poly> {
    v.iter().map(|c| Poly::constant(d, c.clone())).collect()
}

/// Basic relative invariants of the catalog spaces: the composition
/// ξ ↦ φ(ξ^k u) when the lowest H-weight space ⟨u⟩ is a line, and for
/// [2,2], [4,2] the discriminant of (u, v) ↦ ω(u, ξv) on the weight -1 space.
pub fn catalog_invariants(pv: &PVSpace) -> Result<Vec<RelativeInvariant>> {
    let d = pv.dim();
    let xi = pv.xi_matrix();
    let w = &pv.cd.weights;
    let (&lo, low) = w.iter().next().ok_or_else(|| Error::Domain("no weights".into()))?;
    let (&hi, high) = w.iter().next_back().expect("nonempty");
    let mut out = Vec::new();
    let symplectic = matches!(pv.partition.as_slice(), [2, 2] | [4, 2]) && pv.alg.form().is_some();
    if !symplectic && !matches!(pv.partition.as_slice(), [2, 1] | [3, 1]) {
        return Err(Error::Domain(format!("no catalog invariants for {:?}", pv.partition)));
    }
    if symplectic {
        let omega = pv.alg.form().expect("symplectic");
        let us = w.get(&-1).ok_or_else(|| Error::Domain("no weight -1 space".into()))?.basis().to_vec();
        if us.len() != 2 {
            return Err(Error::Domain("weight -1 space is not a plane".into()));
        }
        let mut g = vec![vec![Poly::zero(d); 2]; 2];
        for (i, ui) in us.iter().enumerate() {
            let left: Vec<Q> = omega.transpose().mul_vec(ui);
            for (j, uj) in us.iter().enumerate() {
                let img = pvec_apply(&xi, &const_vec(uj, d), d);
                g[i][j] = left.iter().zip(&img).fold(Poly::zero(d), |acc, (a, b)| acc.add(&b.scale(a)));
            }
        }
        let disc = g[0][1].mul(&g[1][0]).sub(&g[0][0].mul(&g[1][1]));
        out.push(("discriminant".to_string(), disc));
    }
    if low.dim() == 1 && high.dim() == 1 && lo == -hi {
        let k = (hi - lo) / 2;
        let mut v = const_vec(&low.basis()[0], d);
        for _ in 0..k {
            v = pvec_apply(&xi, &v, d);
        }
        let top = &high.basis()[0];
        let i = top.iter().position(|c| !c.is_zero()).expect("nonzero");
        let name = if k == 1 { "coordinate" } else { "composition" };
        out.push((name.to_string(), v[i].scale(&(Q::one() / &top[i]))));
    }
    out.into_iter()
        .map(|(name, poly)| {
            let character = pv
                .levi
                .character_of(&poly)
                .ok_or_else(|| Error::Consistency(format!("{name} is not a relative invariant")))?;
            Ok(RelativeInvariant { name, poly, character })
        })
        .collect()
}

/// Product of relative invariants, with the summed character.
pub fn product_invariant(ps: &[RelativeInvariant]) -> Option<RelativeInvariant> {
    let first = ps.first()?;
    let mut poly = first.poly.clone();
    let mut character = first.character.clone();
    for p in &ps[1..] {
        poly = poly.mul(&p.poly);
        for (a, b) in character.iter_mut().zip(&p.character) {
            *a += b;
        }
    }
    let name = ps.iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join("*");
    Some(RelativeInvariant { name, poly, character })
}

/// Exact rank of the Jacobian of ∇p/p, i.e. of p·Hess(p) - ∇p ∇pᵀ, at five
/// random generic points.
pub fn regularity_check<R: Rng>(pv: &PVSpace, p: &Poly, rng: &mut R) -> Result<bool> {
    if p.is_zero() {
        return Err(Error::Domain("zero polynomial".into()));
    }
    let d = pv.dim();
    let grad: Vec<Poly> = (0..d).map(|i| p.derivative(i)).collect();
    let hess: Vec<Vec<Poly>> = grad.iter().map(|g| (0..d).map(|j| g.derivative(j)).collect()).collect();
    let mut good = 0;
    for _ in 0..200 {
        let x: Vec<Q> = (0..d).map(|_| qi(rng.gen_range(-6..=6))).collect();
        let px = p.eval(&x);
        if px.is_zero() || !dense_orbit_check(pv, &x).generic {
            continue;
        }
        let gx: Vec<Q> = grad.iter().map(|g| g.eval(&x)).collect();
        let mut m = Mat::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                m.set(i, j, &px * hess[i][j].eval(&x) - &gx[i] * &gx[j]);
            }
        }
        if m.rank() != d {
            return Ok(false);
        }
        good += 1;
        if good == 5 {
            return Ok(true);
        }
    }
    Err(Error::Inconclusive("too few generic points with p != 0".into()))
}

/// Trace of ad W on top/bottom for W running through the basis of g_0.
pub fn modular_character_of(alg: &MatrixLieAlgebra, cd: &CanonicalData, top: &Subspace, bottom: &Subspace) -> Result<Vec<Q>> {
    let levi: Vec<Mat> = cd.levi.basis().iter().map(|b| Mat::unflatten(alg.n, b)).collect();
    let a = quotient_action(alg.n, &levi, top, bottom, None)?;
    Ok(a.matrices.iter().map(|m| m.trace()).collect())
}

/// δ_W for W = u_{≥lo}/u_{≥hi} (hi = None for no upper cut).
pub fn modular_character(alg: &MatrixLieAlgebra, cd: &CanonicalData, lo: i64, hi: Option<i64>) -> Result<Vec<Q>> {
    if lo < 1 || hi.is_some_and(|h| h < lo) {
        return Err(Error::Domain(format!("grading bounds [{lo}, {hi:?}) do not give a subquotient of u")));
    }
    let n2 = alg.n * alg.n;
    let above = |k: i64| cd.grading.iter().filter(|(j, _)| **j >= k).fold(Subspace::zero(n2), |acc, (_, s)| acc.sum(s));
    let top = above(lo);
    let bottom = hi.map(above).unwrap_or_else(|| Subspace::zero(n2));
    modular_character_of(alg, cd, &top, &bottom)
}

#[derive(Clone, Debug, Serialize)]
pub struct GenericTorus {
    /// dim A_{L_ξ}/A_G
    pub dim: usize,
    pub stabiliser_dim: usize,
    pub centre_dim: usize,
    /// per generator of the split part modulo the centre of g: eigenvalues on
    /// each H-weight space of V, and whether it acts there by a homothety
    pub action: Vec<Vec<WeightAction>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeightAction {
    pub weight: i64,
    pub eigenvalues: Vec<String>,
    pub homothety: bool,
}

/// Split part of the centre of the stabiliser of a generic ξ in g_0,
/// modulo the centre of g.
pub fn generic_torus(pv: &PVSpace, xi: &[Q]) -> Result<GenericTorus> {
    if !dense_orbit_check(pv, xi).generic {
        return Err(Error::Domain("ξ is not generic".into()));
    }
    let n = pv.alg.n;
    let stab: Vec<Mat> = pv.levi.stabiliser(xi).iter().map(|c| combine(&pv.levi.acting, c, n)).collect();
    // centre of the stabiliser
    let mut cols = Vec::new();
    for a in &stab {
        let mut col = Vec::new();
        for b in &stab {
            col.extend(Mat::commutator(a, b).flatten());
        }
        cols.push(col);
    }
    let centre: Vec<Mat> = if stab.is_empty() {
        Vec::new()
    } else {
        Mat::from_cols(cols[0].len(), &cols).kernel().iter().map(|c| combine(&stab, c, n)).collect()
    };
    let split = split_part(&centre, n)?;
    let mut span = Subspace::span(n * n, &split.iter().map(|m| m.flatten()).collect::<Vec<_>>());
    let centre_g = match pv.alg.kind {
        AlgKind::Gl => Subspace::span(n * n, &[Mat::identity(n).flatten()]),
        AlgKind::Sp(_) => Subspace::zero(n * n),
    };
    let quotient_basis = span.complement_basis(&span.intersect(&centre_g));
    span = Subspace::span(n * n, &quotient_basis);
    let mut action = Vec::new();
    for b in span.basis() {
        let m = Mat::unflatten(n, b);
        let mut per = Vec::new();
        for (&k, s) in &pv.cd.weights {
            let r = restrict(&m, s)?;
            let ev = rational_roots(&minimal_polynomial(&r))?;
            let homothety = r == Mat::identity(r.rows).scale(r.get(0, 0));
            per.push(WeightAction { weight: k, eigenvalues: ev.iter().map(fmt_q).collect(), homothety });
        }
        action.push(per);
    }
    Ok(GenericTorus { dim: span.dim(), stabiliser_dim: stab.len(), centre_dim: centre.len(), action })
}

fn combine(basis: &[Mat], c: &[Q], n: usize) -> Mat {
    basis.iter().zip(c).fold(Mat::zeros(n, n), |acc, (b, ci)| acc.add(&b.scale(ci)))
}

/// Elements of a commuting family of semisimple matrices whose eigenvalues
/// are all rational. Exact when the non-split part of a generic element has
/// irreducible minimal polynomial (degree ≤ 3 is decided by the rational
/// root test); otherwise inconclusive.
fn split_part(centre: &[Mat], n: usize) -> Result<Vec<Mat>> {
    if centre.is_empty() {
        return Ok(Vec::new());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut best: Option<(Mat, Vec<Q>)> = None;
    for _ in 0..6 {
        let c: Vec<Q> = centre.iter().map(|_| qi(rng.gen_range(-9..=9))).collect();
        let w = combine(centre, &c, n);
        let m = minimal_polynomial(&w);
        if best.as_ref().is_none_or(|(_, b)| m.len() > b.len()) {
            best = Some((w, m));
        }
    }
    let (w, m) = best.expect("sampled");
    if !upoly_squarefree(&m) {
        return Err(Error::Consistency("centre of the stabiliser is not toral".into()));
    }
    let roots = rational_roots(&m)?;
    let mut rest = m.clone();
    for r in &roots {
        rest = upoly_deflate(&rest, r);
    }
    if rest.len() == 1 {
        return Ok(centre.to_vec());
    }
    if rest.len() > 4 {
        return Err(Error::Inconclusive("non-split part of degree > 3".into()));
    }
    // W is split iff it acts on U = Ker rest(w) by a scalar
    let u = Subspace::kernel_of(&upoly_at_matrix(&rest, &w));
    let k = centre.len();
    let mut cols: Vec<Vec<Q>> = Vec::new();
    for c in centre {
        cols.push(u.basis().iter().flat_map(|b| c.mul_vec(b)).collect());
    }
    cols.push(u.basis().iter().flat_map(|b| b.iter().map(|x| -x)).collect());
    let ker = Mat::from_cols(cols[0].len(), &cols).kernel();
    Ok(ker.iter().map(|c| combine(centre, &c[..k], n)).filter(|m| !m.is_zero()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Splitting {
    pub dim: usize,
    pub dim_sub: usize,
    pub dim_quot: usize,
    /// dimension of the part of g_0 normalising N′U″
    pub acting_dim: usize,
    pub sub_prehomogeneous: bool,
    pub quot_prehomogeneous: bool,
}

/// V_{P′} = N′U″/U″ and V^{P′} = V/V_{P′} for an N′ ⊆ u′, with the part of
/// g_0 normalising N′ + u″ acting on both.
pub fn splitting_check<R: Rng>(pv: &PVSpace, nprime: &Subspace, rng: &mut R) -> Result<Splitting> {
    let n = pv.alg.n;
    let cd = &pv.cd;
    if !cd.u1.contains_space(nprime) {
        return Err(Error::Domain("N′ is not inside u′".into()));
    }
    let s = nprime.sum(&cd.u2);
    let ann = s.annihilator();
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for f in ann.basis() {
        for b in s.basis() {
            let bm = Mat::unflatten(n, b);
            rows.push(pv.levi.acting.iter().map(|w| crate::rat::dot(f, &Mat::commutator(w, &bm).flatten())).collect());
        }
    }
    let coeffs = if rows.is_empty() {
        Mat::identity(pv.levi.acting.len()).cols_vec()
    } else {
        Mat::from_rows(&rows).kernel()
    };
    let acting: Vec<Mat> = coeffs.iter().map(|c| combine(&pv.levi.acting, c, n)).collect();
    let sub = quotient_action(n, &acting, &s, &cd.u2, None)?;
    let quot = quotient_action(n, &acting, &cd.u1, &s, None)?;
    let prehom = |a: &LinearAction, rng: &mut R| {
        a.dim() == 0
            || (0..10).any(|_| {
                let z = random_in(&a.top, rng);
                a.project(&z).map(|x| a.is_generic(&x)).unwrap_or(false)
            })
    };
    Ok(Splitting {
        dim: pv.dim(),
        dim_sub: sub.dim(),
        dim_quot: quot.dim(),
        acting_dim: acting.len(),
        sub_prehomogeneous: prehom(&sub, rng),
        quot_prehomogeneous: prehom(&quot, rng),
    })
}

/// n/n′ for a flag parabolic of gl_n, with the Levi algebra of a
/// complementary grading acting.
pub fn tangent_action(alg: &MatrixLieAlgebra, p: &FlagParabolic, nprime: &Subspace) -> Result<LinearAction> {
    if alg.form().is_some() {
        return Err(Error::Config("tangent spaces are implemented for gl_n".into()));
    }
    let n = alg.n;
    let mut pieces = Vec::new();
    let mut prev = Subspace::zero(n);
    for s in p.flag.iter().chain(std::iter::once(&Subspace::full(n))) {
        pieces.push(Subspace::span(n, &s.complement_basis(&prev)));
        prev = s.clone();
    }
    let conds: Vec<(&Subspace, &Subspace)> = pieces.iter().map(|c| (c, c)).collect();
    let levi = crate::orbitind::alg_where(alg, &conds);
    let acting: Vec<Mat> = levi.basis().iter().map(|b| Mat::unflatten(n, b)).collect();
    let nil = p.nilradical(alg);
    quotient_action(n, &acting, &nil, nprime, None)
}
