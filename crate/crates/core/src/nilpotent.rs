//! Nilpotent elements of gl_n and sp(V, ω): Jordan types, sl2-triples, the
//! ad H grading and the canonical parabolic data and flag.

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::rat::{qi, Q};
use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;
use std::collections::BTreeMap;

/// Weakly decreasing list of positive parts.
pub type Partition = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgKind {
    Gl,
    /// symplectic, Gram matrix of ω
    Sp(Mat),
}

#[derive(Clone, Debug)]
pub struct MatrixLieAlgebra {
    pub n: usize,
    pub kind: AlgKind,
    pub basis: Vec<Mat>,
    /// span of the basis inside Q^{n²}
    pub space: Subspace,
}

impl MatrixLieAlgebra {
    pub fn gl(n: usize) -> MatrixLieAlgebra {
        let basis: Vec<Mat> = (0..n).flat_map(|i| (0..n).map(move |j| Mat::unit(n, i, j))).collect();
        MatrixLieAlgebra { n, kind: AlgKind::Gl, basis, space: Subspace::full(n * n) }
    }

    pub fn sp(j: Mat) -> Result<MatrixLieAlgebra> {
        let n = j.rows;
        if !j.is_square() || n % 2 == 1 || j.transpose() != j.neg() || j.det().is_zero() {
            return Err(Error::Config("ω must be antisymmetric and nondegenerate".into()));
        }
        // Zᵀ J + J Z = 0 as a linear condition on vec(Z)
        let mut cols = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let e = Mat::unit(n, a, b);
                cols.push(e.transpose().mul(&j).add(&j.mul(&e)).flatten());
            }
        }
        let space = Subspace::kernel_of(&Mat::from_cols(n * n, &cols));
        let basis = space.basis().iter().map(|v| Mat::unflatten(n, v)).collect();
        Ok(MatrixLieAlgebra { n, kind: AlgKind::Sp(j), basis, space })
    }

    /// sp_{2m} with ω(e_i, e_{2m+1-i}) = 1 for i ≤ m.
    pub fn sp_standard(n2: usize) -> MatrixLieAlgebra {
        MatrixLieAlgebra::sp(standard_symplectic_form(n2)).expect("standard form")
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, z: &Mat) -> bool {
        z.rows == self.n && z.cols == self.n && self.space.contains(&z.flatten())
    }

    pub fn form(&self) -> Option<&Mat> {
        match &self.kind {
            AlgKind::Gl => None,
            AlgKind::Sp(j) => Some(j),
        }
    }

    pub fn label(&self) -> String {
        match self.kind {
            AlgKind::Gl => format!("gl{}", self.n),
            AlgKind::Sp(_) => format!("sp{}", self.n),
        }
    }

    /// Coordinates of Σ c_i B_i ↦ f(B_i) as the columns of a matrix on Q^{n²}.
    pub(crate) fn linear_map<F: Fn(&Mat) -> Mat>(&self, f: F) -> Mat {
        let cols: Vec<Vec<Q>> = self.basis.iter().map(|b| f(b).flatten()).collect();
        Mat::from_cols(self.n * self.n, &cols)
    }

    pub(crate) fn combine(&self, c: &[Q]) -> Mat {
        let mut z = Mat::zeros(self.n, self.n);
        for (ci, b) in c.iter().zip(&self.basis) {
            if !ci.is_zero() {
                z = z.add(&b.scale(ci));
            }
        }
        z
    }

    /// Random element with integer coordinates in [-b, b].
    pub fn random_element<R: Rng>(&self, rng: &mut R, b: i64) -> Mat {
        let c: Vec<Q> = (0..self.dim()).map(|_| qi(rng.gen_range(-b..=b))).collect();
        self.combine(&c)
    }

    /// Random element of the group with small entries: a product of a few
    /// elementary matrices and signs for gl, Cayley transforms of sparse
    /// algebra elements for sp.
    pub fn random_group_element<R: Rng>(&self, rng: &mut R) -> Mat {
        let n = self.n;
        let id = Mat::identity(n);
        match self.kind {
            AlgKind::Gl => {
                let mut g = id.clone();
                for _ in 0..2 * n {
                    let i = rng.gen_range(0..n);
                    let j = rng.gen_range(0..n);
                    let e = if i == j {
                        let mut d = id.clone();
                        d.set(i, i, qi([-1, 2, -2][rng.gen_range(0..3)]));
                        d
                    } else {
                        id.add(&Mat::unit(n, i, j).scale(&qi(rng.gen_range(-2..=2))))
                    };
                    g = g.mul(&e);
                }
                g
            }
            AlgKind::Sp(_) => {
                let mut g = id.clone();
                let mut k = 0;
                while k < 3 {
                    let mut a = Mat::zeros(n, n);
                    for _ in 0..2 {
                        let b = &self.basis[rng.gen_range(0..self.dim())];
                        a = a.add(&b.scale(&Q::new(rng.gen_range(-1..=1).into(), 2.into())));
                    }
                    if let Some(inv) = id.sub(&a).inverse() {
                        g = g.mul(&inv.mul(&id.add(&a)));
                        k += 1;
                    }
                }
                g
            }
        }
    }

    /// Coordinates of an element in the stored basis (the basis is in reduced
    /// echelon form, so they are read off at the pivots).
    pub fn coords(&self, z: &Mat) -> Vec<Q> {
        let v = z.flatten();
        self.basis_pivots().iter().map(|&p| v[p].clone()).collect()
    }

    fn basis_pivots(&self) -> Vec<usize> {
        self.space.basis().iter().map(|r| r.iter().position(|c| !c.is_zero()).expect("nonzero row")).collect()
    }

    pub fn preserves_form(&self, g: &Mat) -> bool {
        match &self.kind {
            AlgKind::Gl => !g.det().is_zero(),
            AlgKind::Sp(j) => &g.transpose().mul(j).mul(g) == j,
        }
    }
}

pub fn standard_symplectic_form(n2: usize) -> Mat {
    let mut j = Mat::zeros(n2, n2);
    for i in 0..n2 / 2 {
        j.set(i, n2 - 1 - i, Q::one());
        j.set(n2 - 1 - i, i, -Q::one());
    }
    j
}

pub fn is_nilpotent(x: &Mat) -> bool {
    x.is_square() && x.pow(x.rows as u32).is_zero()
}

/// Jordan partition of a nilpotent matrix from the ranks of its powers.
pub fn jordan_type(x: &Mat) -> Result<Partition> {
    if !is_nilpotent(x) {
        return Err(Error::Domain("matrix is not nilpotent".into()));
    }
    let n = x.rows;
    let mut ranks = vec![n];
    let mut p = Mat::identity(n);
    for _ in 0..=n {
        p = p.mul(x);
        ranks.push(p.rank());
    }
    let mut parts = Vec::new();
    for k in (1..=n).rev() {
        let m = ranks[k - 1] + ranks[k + 1] - 2 * ranks[k];
        parts.extend(std::iter::repeat_n(k, m));
    }
    Ok(parts)
}

/// exp of a nilpotent matrix, a finite sum.
pub fn exp_nil(x: &Mat) -> Mat {
    let n = x.rows;
    let mut out = Mat::identity(n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = term.mul(x).scale(&Q::new(1.into(), (k as i64).into()));
        if term.is_zero() {
            break;
        }
        out = out.add(&term);
    }
    out
}

/// log of a unipotent matrix, a finite sum.
pub fn log_unip(g: &Mat) -> Mat {
    let n = g.rows;
    let u = g.sub(&Mat::identity(n));
    let mut out = Mat::zeros(n, n);
    let mut term = Mat::identity(n);
    for k in 1..=n {
        term = term.mul(&u);
        if term.is_zero() {
            break;
        }
        let c = Q::new(if k % 2 == 1 { 1.into() } else { (-1).into() }, (k as i64).into());
        out = out.add(&term.scale(&c));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub x: Mat,
    pub h: Mat,
    pub y: Mat,
}

impl Sl2Triple {
    pub fn is_valid(&self) -> bool {
        let two = qi(2);
        Mat::commutator(&self.h, &self.x) == self.x.scale(&two)
            && Mat::commutator(&self.h, &self.y) == self.y.scale(&two).neg()
            && Mat::commutator(&self.x, &self.y) == self.h
    }
}

/// sl2-triple through X inside the algebra. H is any element of [X, g] with
/// [H, X] = 2X (perturbed by a random kernel element when `rng` is given), Y the
/// unique completion.
pub fn jm_triple_with<R: Rng>(x: &Mat, alg: &MatrixLieAlgebra, rng: Option<&mut R>) -> Result<Sl2Triple> {
    if !alg.contains(x) {
        return Err(Error::Domain("X is not in the algebra".into()));
    }
    if !is_nilpotent(x) {
        return Err(Error::Domain("X is not nilpotent".into()));
    }
    let n = alg.n;
    if x.is_zero() {
        let z = Mat::zeros(n, n);
        return Ok(Sl2Triple { x: z.clone(), h: z.clone(), y: z });
    }
    // [[X, Z], X] = 2X
    let a = alg.linear_map(|b| Mat::commutator(&Mat::commutator(x, b), x));
    let mut zc = a
        .solve(&x.scale(&qi(2)).flatten())
        .ok_or_else(|| Error::Consistency("no H with [H,X] = 2X in [X,g]".into()))?;
    if let Some(rng) = rng {
        for k in a.kernel() {
            let c = qi(rng.gen_range(-2..=2));
            for (z, kk) in zc.iter_mut().zip(&k) {
                *z += &c * kk;
            }
        }
    }
    let h = Mat::commutator(x, &alg.combine(&zc));
    // [X, Y] = H and [H, Y] = -2Y
    let bx = alg.linear_map(|b| Mat::commutator(x, b));
    let bh = alg.linear_map(|b| Mat::commutator(&h, b).add(&b.scale(&qi(2))));
    let mut rows = Vec::new();
    for i in 0..bx.rows {
        rows.push(bx.row(i));
    }
    for i in 0..bh.rows {
        rows.push(bh.row(i));
    }
    let big = Mat::from_rows(&rows);
    let mut rhs = h.flatten();
    rhs.extend(std::iter::repeat_n(Q::zero(), n * n));
    let yc = big.solve(&rhs).ok_or_else(|| Error::Consistency("no Y completing the triple".into()))?;
    let t = Sl2Triple { x: x.clone(), h, y: alg.combine(&yc) };
    if !t.is_valid() {
        return Err(Error::Consistency("triple fails the bracket relations".into()));
    }
    Ok(t)
}

pub fn jm_triple(x: &Mat, alg: &MatrixLieAlgebra) -> Result<Sl2Triple> {
    jm_triple_with::<rand_chacha::ChaCha8Rng>(x, alg, None)
}

/// Eigenspaces of a diagonalisable matrix with integer eigenvalues in [-b, b].
pub fn integer_eigenspaces(h: &Mat, b: i64) -> Result<BTreeMap<i64, Subspace>> {
    let n = h.rows;
    let mut out = BTreeMap::new();
    let mut total = 0;
    for k in -b..=b {
        let s = Subspace::kernel_of(&h.sub(&Mat::identity(n).scale(&qi(k))));
        if !s.is_zero() {
            total += s.dim();
            out.insert(k, s);
        }
    }
    if total != n {
        return Err(Error::Consistency("H is not diagonalisable with integer eigenvalues".into()));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CanonicalData {
    pub triple: Sl2Triple,
    /// g_n inside Q^{n²}
    pub grading: BTreeMap<i64, Subspace>,
    pub q: Subspace,
    pub u: Subspace,
    pub u1: Subspace,
    pub u2: Subspace,
    pub levi: Subspace,
    /// eigenspaces of H on V
    pub weights: BTreeMap<i64, Subspace>,
    /// V_{≥k} for the H eigenvalues k in decreasing order, proper and nonzero
    pub flag: Vec<Subspace>,
}

fn sum_graded(gr: &BTreeMap<i64, Subspace>, n2: usize, pred: impl Fn(i64) -> bool) -> Subspace {
    gr.iter().filter(|(k, _)| pred(**k)).fold(Subspace::zero(n2), |acc, (_, s)| acc.sum(s))
}

pub fn canonical_data_from(triple: Sl2Triple, alg: &MatrixLieAlgebra) -> Result<CanonicalData> {
    let n = alg.n;
    let n2 = n * n;
    let bound = 2 * n as i64;
    let weights = integer_eigenspaces(&triple.h, bound)?;
    // ad H in the coordinates of the algebra basis
    let cols: Vec<Vec<Q>> = alg.basis.iter().map(|b| alg.coords(&Mat::commutator(&triple.h, b))).collect();
    let adh = Mat::from_cols(alg.dim(), &cols);
    let ks: std::collections::BTreeSet<i64> =
        weights.keys().flat_map(|a| weights.keys().map(move |b| a - b)).collect();
    let mut grading = BTreeMap::new();
    for k in ks {
        let ker = adh.sub(&Mat::identity(alg.dim()).scale(&qi(k))).kernel();
        if ker.is_empty() {
            continue;
        }
        let vecs: Vec<Vec<Q>> = ker.iter().map(|c| alg.combine(c).flatten()).collect();
        grading.insert(k, Subspace::span(n2, &vecs));
    }
    if grading.values().map(|s| s.dim()).sum::<usize>() != alg.dim() {
        return Err(Error::Consistency("ad H is not diagonalisable on g".into()));
    }
    let mut flag = Vec::new();
    let mut acc = Subspace::zero(n);
    for (_, s) in weights.iter().rev() {
        acc = acc.sum(s);
        if !acc.is_full() {
            flag.push(acc.clone());
        }
    }
    Ok(CanonicalData {
        q: sum_graded(&grading, n2, |k| k >= 0),
        u: sum_graded(&grading, n2, |k| k > 0),
        u1: sum_graded(&grading, n2, |k| k > 1),
        u2: sum_graded(&grading, n2, |k| k > 2),
        levi: grading.get(&0).cloned().unwrap_or_else(|| Subspace::zero(n2)),
        grading,
        weights,
        flag,
        triple,
    })
}

pub fn canonical_data(x: &Mat, alg: &MatrixLieAlgebra) -> Result<CanonicalData> {
    canonical_data_from(jm_triple(x, alg)?, alg)
}

pub fn kernel_power(x: &Mat, k: u32) -> Subspace {
    Subspace::kernel_of(&x.pow(k))
}

pub fn image_power(x: &Mat, k: u32) -> Subspace {
    Subspace::column_space(&x.pow(k))
}

/// Weight filtration of X: V_{≥k} = Σ_b Im X^{max(0, b+k-1)} ∩ Ker X^b,
/// computed without any sl2-triple.
pub fn weight_filtration(x: &Mat) -> Vec<Subspace> {
    let n = x.rows as i64;
    let ims: Vec<Subspace> = (0..=2 * n).map(|a| image_power(x, a as u32)).collect();
    let kers: Vec<Subspace> = (0..=n).map(|b| kernel_power(x, b as u32)).collect();
    let mut out: Vec<Subspace> = Vec::new();
    for k in (-n..=n).rev() {
        let mut s = Subspace::zero(x.rows);
        for b in 0..=n {
            let a = (b + k - 1).max(0);
            s = s.sum(&ims[a as usize].intersect(&kers[b as usize]));
        }
        if !s.is_zero() && !s.is_full() && out.last() != Some(&s) {
            out.push(s);
        }
    }
    out
}

/// The linear map Z ↦ g Z g⁻¹ on Q^{n²}.
pub fn conjugation_map(g: &Mat) -> Mat {
    let n = g.rows;
    let gi = g.inverse().expect("invertible");
    let cols: Vec<Vec<Q>> =
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| g.mul(&Mat::unit(n, i, j)).mul(&gi).flatten()).collect();
    Mat::from_cols(n * n, &cols)
}

/// Jordan-type representative of a gl_n partition: X e_{i+1} = e_i inside each block.
pub fn gl_representative(parts: &[usize]) -> Mat {
    let n: usize = parts.iter().sum();
    let mut x = Mat::zeros(n, n);
    let mut off = 0;
    for &p in parts {
        for i in 0..p.saturating_sub(1) {
            x.set(off + i, off + i + 1, Q::one());
        }
        off += p;
    }
    x
}

/// Symplectic normal form: each even part k gets a block v_1..v_k with
/// ω(v_i, v_j) = a (-1)^i δ_{i+j,k+1}, using the next scalar from `coeffs`
/// (default 1); odd parts are paired into dual blocks.
pub fn sp_representative(parts: &[usize], coeffs: &[i64]) -> Result<(Mat, Mat)> {
    if coeffs.contains(&0) {
        return Err(Error::Domain("block scalars must be nonzero".into()));
    }
    let n: usize = parts.iter().sum();
    let mut odd: BTreeMap<usize, usize> = BTreeMap::new();
    for &p in parts {
        if p % 2 == 1 {
            *odd.entry(p).or_default() += 1;
        }
    }
    if odd.values().any(|m| m % 2 == 1) {
        return Err(Error::Domain("odd parts of a symplectic partition must have even multiplicity".into()));
    }
    let mut x = Mat::zeros(n, n);
    let mut j = Mat::zeros(n, n);
    let mut off = 0;
    let mut ci = 0;
    let mut pending_odd: Option<(usize, usize)> = None;
    let sign = |i: usize| if i.is_multiple_of(2) { Q::one() } else { -Q::one() };
    for &k in parts {
        for i in 0..k.saturating_sub(1) {
            x.set(off + i, off + i + 1, Q::one());
        }
        if k % 2 == 0 {
            let a = qi(coeffs.get(ci).copied().unwrap_or(1));
            ci += 1;
            for i in 1..=k {
                let jj = k + 1 - i;
                j.set(off + i - 1, off + jj - 1, &a * sign(i));
            }
        } else if let Some((poff, pk)) = pending_odd.take() {
            assert_eq!(pk, k);
            for i in 1..=k {
                let jj = k + 1 - i;
                j.set(poff + i - 1, off + jj - 1, sign(i));
                j.set(off + jj - 1, poff + i - 1, -sign(i));
            }
        } else {
            pending_odd = Some((off, k));
        }
        off += k;
    }
    Ok((x, j))
}

pub fn parse_partition(s: &str) -> Result<Partition> {
    let mut p: Vec<usize> = s
        .split([',', '+', '.'])
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Config(format!("bad partition {s:?}"))))
        .collect::<Result<_>>()?;
    if p.contains(&0) {
        return Err(Error::Config("partition parts must be positive".into()));
    }
    p.sort_unstable_by(|a, b| b.cmp(a));
    Ok(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct FlagCheck {
    pub case: String,
    pub checks: Vec<(String, bool)>,
}

impl FlagCheck {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, b)| *b)
    }
}

/// Compares the grading-derived flag with the Ker/Im descriptions of the
/// catalog partitions [2,1] (gl3), [3,1] (gl4), [2,2] (sp4), [4,2] (sp6).
pub fn flag_formula_check(x: &Mat, alg: &MatrixLieAlgebra) -> Result<FlagCheck> {
    let cd = canonical_data(x, alg)?;
    let p = jordan_type(x)?;
    let k = |i| kernel_power(x, i);
    let im = |i| image_power(x, i);
    let f = &cd.flag;
    let mut checks = Vec::new();
    let mut push = |name: &str, ok: bool| checks.push((name.to_string(), ok));
    let case = format!("{}:{:?}", alg.label(), p);
    match (&alg.kind, p.as_slice()) {
        (AlgKind::Gl, [2, 1]) => {
            push("two-step flag", f.len() == 2);
            push("V- = Im X", f.first() == Some(&im(1)));
            push("V+ = Ker X", f.get(1) == Some(&k(1)));
        }
        (AlgKind::Gl, [3, 1]) => {
            push("two-step flag", f.len() == 2);
            push("Ker X ∩ Im X = Im X^2", k(1).intersect(&im(1)) == im(2));
            push("Ker X + Im X = Ker X^2", k(1).sum(&im(1)) == k(2));
            push("V- = Im X^2", f.first() == Some(&im(2)));
            push("V+ = Ker X^2", f.get(1) == Some(&k(2)));
        }
        (AlgKind::Sp(_), [2, 2]) => {
            push("one-step flag", f.len() == 1);
            push("Ker X = Im X", k(1) == im(1));
            push("V0 = Ker X", f.first() == Some(&k(1)));
        }
        (AlgKind::Sp(j), [4, 2]) => {
            push("three-step flag", f.len() == 3);
            push("Ker X^3 = Ker X^2 + Im X", k(3) == k(2).sum(&im(1)));
            push("Ker X^2 ∩ Im X = Ker X + Im X^2", k(2).intersect(&im(1)) == k(1).sum(&im(2)));
            push("V- = Im X^3", f.first() == Some(&im(3)));
            push("V0 = Ker X^2 ∩ Im X", f.get(1) == Some(&k(2).intersect(&im(1))));
            push("V+ = Ker X^3", f.get(2) == Some(&k(3)));
            let dual = f.len() == 3 && (0..3).all(|i| f[i].perp(j) == f[2 - i]);
            push("self-dual", dual);
        }
        _ => return Err(Error::Config(format!("no flag formulas for {case}"))),
    }
    push("flag = weight filtration", *f == weight_filtration(x));
    Ok(FlagCheck { case, checks })
}

/// span{[a, b]} for subspaces of Q^{n²}.
pub fn bracket_space(n: usize, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vecs = Vec::new();
    for u in a.basis() {
        let mu = Mat::unflatten(n, u);
        for v in b.basis() {
            vecs.push(Mat::commutator(&mu, &Mat::unflatten(n, v)).flatten());
        }
    }
    Subspace::span(n * n, &vecs)
}

/// Rational classes used as running examples: the subregular class of gl3,
/// the class [3,1] of gl4, and split and anisotropic forms of [2,2] in sp4
/// and [4,2] in sp6.
pub const CATALOG: [&str; 6] = ["gl3", "gl4", "sp4-split", "sp4-aniso", "sp6-split", "sp6-aniso"];

pub fn catalog_element(name: &str) -> Result<(MatrixLieAlgebra, Mat)> {
    let sp = |p: &[usize], c: &[i64]| -> Result<(MatrixLieAlgebra, Mat)> {
        let (x, j) = sp_representative(p, c)?;
        Ok((MatrixLieAlgebra::sp(j)?, x))
    };
    match name {
        "gl3" => Ok((MatrixLieAlgebra::gl(3), gl_representative(&[2, 1]))),
        "gl4" => Ok((MatrixLieAlgebra::gl(4), gl_representative(&[3, 1]))),
        "sp4-split" => sp(&[2, 2], &[1, -1]),
        "sp4-aniso" => sp(&[2, 2], &[1, 1]),
        "sp6-split" => sp(&[4, 2], &[1, 1]),
        "sp6-aniso" => sp(&[4, 2], &[1, -1]),
        _ => Err(Error::Config(format!("unknown catalog entry {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jordan_types() {
        assert_eq!(jordan_type(&Mat::zeros(4, 4)).unwrap(), vec![1, 1, 1, 1]);
        assert_eq!(jordan_type(&gl_representative(&[3])).unwrap(), vec![3]);
        assert_eq!(jordan_type(&gl_representative(&[2, 2, 1])).unwrap(), vec![2, 2, 1]);
        assert!(jordan_type(&Mat::identity(2)).is_err());
    }

    #[test]
    fn sl2_block() {
        let alg = MatrixLieAlgebra::gl(2);
        let t = jm_triple(&gl_representative(&[2]), &alg).unwrap();
        assert_eq!(t.h, Mat::from_i64(2, 2, &[1, 0, 0, -1]));
    }

    #[test]
    fn exp_log_inverse() {
        let x = gl_representative(&[3, 1]);
        assert_eq!(log_unip(&exp_nil(&x)), x);
    }

    #[test]
    fn sp_normal_forms_in_algebra() {
        for (p, c) in [(vec![2, 2], vec![1, -1]), (vec![4, 2], vec![1, 1]), (vec![3, 3], vec![]), (vec![2, 1, 1], vec![])] {
            let (x, j) = sp_representative(&p, &c).unwrap();
            let alg = MatrixLieAlgebra::sp(j).unwrap();
            assert!(alg.contains(&x));
            assert_eq!(jordan_type(&x).unwrap(), p);
        }
        assert!(sp_representative(&[3, 1], &[]).is_err());
    }
}
