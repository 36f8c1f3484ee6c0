//! Sparse multivariate polynomials with rational coefficients.

use crate::linalg::Mat;
use crate::rat::{to_f64, Q};
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    pub nvars: usize,
    pub terms: BTreeMap<Vec<u32>, Q>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Poly {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Poly {
        let mut p = Poly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Poly {
        Poly::constant(nvars, Q::one())
    }

    pub fn var(nvars: usize, i: usize) -> Poly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Poly::zero(nvars);
        p.terms.insert(e, Q::one());
        p
    }

    /// The linear form x ↦ Σ c_i x_i.
    pub fn linear(c: &[Q]) -> Poly {
        let n = c.len();
        let mut p = Poly::zero(n);
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, ci.clone());
            }
        }
        p
    }

    pub fn monomial(exps: Vec<u32>, c: Q) -> Poly {
        let mut p = Poly::zero(exps.len());
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let remove = {
            let slot = self.terms.entry(e.clone()).or_insert_with(Q::zero);
            *slot += c;
            slot.is_zero()
        };
        if remove {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, s: &Q) -> Poly {
        if s.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut r = Poly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.nvars);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.nvars);
        let mut s = Q::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    pub fn eval_f64(&self, x: &[f64]) -> f64 {
        let mut s = 0.0;
        for (e, c) in &self.terms {
            let mut t = to_f64(c);
            for (xi, &k) in x.iter().zip(e) {
                t *= xi.powi(k as i32);
            }
            s += t;
        }
        s
    }

    pub fn derivative(&self, i: usize) -> Poly {
        let mut r = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            r.add_term(e2, c * Q::from_integer(e[i].into()));
        }
        r
    }

    /// Substitute x = M y, giving a polynomial in the `M.cols` variables y.
    pub fn substitute_linear(&self, m: &Mat) -> Poly {
        assert_eq!(m.rows, self.nvars);
        let n = m.cols;
        let lin: Vec<Poly> = (0..m.rows).map(|i| Poly::linear(&m.row(i))).collect();
        let mut cache: Vec<Vec<Poly>> = lin.iter().map(|l| vec![Poly::one(n), l.clone()]).collect();
        let mut r = Poly::zero(n);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(n, c.clone());
            for (i, &k) in e.iter().enumerate() {
                while cache[i].len() <= k as usize {
                    let next = cache[i].last().unwrap().mul(&lin[i]);
                    cache[i].push(next);
                }
                if k > 0 {
                    t = t.mul(&cache[i][k as usize]);
                }
            }
            r = r.add(&t);
        }
        r
    }

    /// Coefficients of z^0..=z^max of the univariate polynomial z ↦ p(z·x0).
    pub fn ray_coeffs(&self, x0: &[Q], max: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); max + 1];
        for (e, c) in &self.terms {
            let d = e.iter().sum::<u32>() as usize;
            if d > max {
                continue;
            }
            let mut t = c.clone();
            for (xi, &k) in x0.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            out[d] += t;
        }
        out
    }

    /// Directional derivative of p along the linear vector field x ↦ A x.
    pub fn lie_derivative(&self, a: &Mat) -> Poly {
        let n = self.nvars;
        let mut r = Poly::zero(n);
        for k in 0..n {
            let dk = self.derivative(k);
            if dk.is_zero() {
                continue;
            }
            let field = Poly::linear(&a.row(k));
            r = r.add(&dk.mul(&field));
        }
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::qi;

    #[test]
    fn arithmetic_and_substitution() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.eval(&[qi(1), qi(2)]), qi(9));
        let m = Mat::from_i64(2, 2, &[0, 1, 1, 0]);
        let q = x.mul(&y.pow(2)).substitute_linear(&m);
        assert_eq!(q, y.mul(&x.pow(2)));
        assert_eq!(p.ray_coeffs(&[qi(1), qi(1)], 3), vec![qi(0), qi(0), qi(4), qi(0)]);
        assert_eq!(p.derivative(0), x.add(&y).scale(&qi(2)));
    }
}
