//! Dense matrices and subspaces over the rationals.

use crate::rat::{dot, qi, Q};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Q>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(crate::rat::fmt_q).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, v: &[i64]) -> Mat {
        assert_eq!(v.len(), rows * cols);
        Mat { rows, cols, data: v.iter().map(|&x| qi(x)).collect() }
    }

    pub fn from_rows(rows: &[Vec<Q>]) -> Mat {
        let r = rows.len();
        let c = if r == 0 { 0 } else { rows[0].len() };
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            data.extend(row.iter().cloned());
        }
        Mat { rows: r, cols: c, data }
    }

    /// Matrix whose columns are the given vectors (all of length `n`).
    pub fn from_cols(n: usize, cols: &[Vec<Q>]) -> Mat {
        let mut m = Mat::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, c[i].clone());
            }
        }
        m
    }

    /// Elementary matrix E_ij.
    pub fn unit(n: usize, i: usize, j: usize) -> Mat {
        let mut m = Mat::zeros(n, n);
        m.set(i, j, Q::one());
        m
    }

    pub fn diag(d: &[Q]) -> Mat {
        let mut m = Mat::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<Q> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Q> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn cols_vec(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch in product");
        let mut m = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * m.cols + j;
                    m.data[idx] += a * b;
                }
            }
        }
        m
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    let a = self.get(i, j);
                    if !a.is_zero() && !v[j].is_zero() {
                        s += a * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn neg(&self) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| -a).collect() }
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).fold(Q::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn pow(&self, k: u32) -> Mat {
        let mut r = Mat::identity(self.rows);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Row-major flattening, used to view matrices as vectors of the ambient gl_n.
    pub fn flatten(&self) -> Vec<Q> {
        self.data.clone()
    }

    pub fn unflatten(n: usize, v: &[Q]) -> Mat {
        assert_eq!(v.len(), n * n);
        Mat { rows: n, cols: n, data: v.to_vec() }
    }

    pub fn commutator(a: &Mat, b: &Mat) -> Mat {
        a.mul(b).sub(&b.mul(a))
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(r, j);
                    if v.is_zero() {
                        continue;
                    }
                    let nv = m.get(i, j) - &f * v;
                    m.set(i, j, nv);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space {x : A x = 0}.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, f).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Mat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Q::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn det(&self) -> Q {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Q::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Q::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                let f = m.get(i, c) / &piv;
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let nv = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, nv);
                }
            }
        }
        det
    }

    /// One solution of A x = b, if any.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Some(x)
    }

    /// Gram matrix of a list of vectors under the standard dot product.
    pub fn gram(vecs: &[Vec<Q>]) -> Mat {
        let n = vecs.len();
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, dot(&vecs[i], &vecs[j]));
            }
        }
        m
    }

    /// Bilinear form value uᵀ M v.
    pub fn form(&self, u: &[Q], v: &[Q]) -> Q {
        dot(u, &self.mul_vec(v))
    }
}

/// A linear subspace of Q^n stored by its reduced row echelon basis, so that
/// structural equality is equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    n: usize,
    rows: Vec<Vec<Q>>,
}

impl Subspace {
    pub fn zero(n: usize) -> Subspace {
        Subspace { n, rows: Vec::new() }
    }

    pub fn full(n: usize) -> Subspace {
        Subspace::span(n, &Mat::identity(n).cols_vec())
    }

    pub fn span(n: usize, vecs: &[Vec<Q>]) -> Subspace {
        if vecs.is_empty() {
            return Subspace::zero(n);
        }
        let m = Mat::from_rows(vecs);
        assert_eq!(m.cols, n);
        let (r, piv) = m.rref();
        let rows = (0..piv.len()).map(|i| r.row(i)).collect();
        Subspace { n, rows }
    }

    pub fn column_space(m: &Mat) -> Subspace {
        Subspace::span(m.rows, &m.cols_vec())
    }

    pub fn kernel_of(m: &Mat) -> Subspace {
        Subspace::span(m.cols, &m.kernel())
    }

    pub fn ambient(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.n
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut rows = self.rows.clone();
        rows.push(v.to_vec());
        Mat::from_rows(&rows).rank() == self.rows.len()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        o.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(o.rows.iter().cloned());
        Subspace::span(self.n, &rows)
    }

    /// {x : x · s = 0 for all s in self}.
    pub fn annihilator(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.n);
        }
        Subspace::span(self.n, &Mat::from_rows(&self.rows).kernel())
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        self.annihilator().sum(&o.annihilator()).annihilator()
    }

    /// Image under a linear map.
    pub fn image(&self, m: &Mat) -> Subspace {
        let vecs: Vec<Vec<Q>> = self.rows.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::span(m.rows, &vecs)
    }

    /// Orthogonal complement with respect to the bilinear form with Gram matrix `g`.
    pub fn perp(&self, g: &Mat) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.n);
        }
        let rows: Vec<Vec<Q>> = self.rows.iter().map(|v| g.transpose().mul_vec(v)).collect();
        Subspace::span(self.n, &Mat::from_rows(&rows).kernel())
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        if self.rows.is_empty() {
            return if v.iter().all(|x| x.is_zero()) { Some(Vec::new()) } else { None };
        }
        Mat::from_rows(&self.rows).transpose().solve(v)
    }

    /// Basis of a complement of `sub` inside `self`, chosen among standard-form vectors.
    pub fn complement_basis(&self, sub: &Subspace) -> Vec<Vec<Q>> {
        let mut cur = sub.clone();
        let mut out = Vec::new();
        for v in &self.rows {
            if !cur.contains(v) {
                cur = cur.sum(&Subspace::span(self.n, std::slice::from_ref(v)));
                out.push(v.clone());
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qf;

    #[test]
    fn rank_kernel_inverse() {
        let a = Mat::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(a.rank(), 2);
        let k = a.kernel();
        assert_eq!(k.len(), 1);
        assert!(a.mul_vec(&k[0]).iter().all(|x| x.is_zero()));
        let b = Mat::from_i64(2, 2, &[2, 1, 1, 1]);
        let bi = b.inverse().unwrap();
        assert_eq!(b.mul(&bi), Mat::identity(2));
        assert_eq!(b.det(), qi(1));
        assert!(a.inverse().is_none());
    }

    #[test]
    fn subspace_lattice() {
        let e = Mat::identity(3).cols_vec();
        let s = Subspace::span(3, &[e[0].clone(), e[1].clone()]);
        let t = Subspace::span(3, &[e[1].clone(), e[2].clone()]);
        assert_eq!(s.intersect(&t), Subspace::span(3, &[e[1].clone()]));
        assert!(s.sum(&t).is_full());
        let w = Subspace::span(3, &[vec![qi(2), qi(2), qi(0)], vec![qi(1), qi(-1), qi(0)]]);
        assert_eq!(w, s);
        assert_eq!(s.coords(&[qi(3), qf(1, 2), qi(0)]).unwrap().len(), 2);
    }
}
