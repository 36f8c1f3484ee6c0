use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub type Q = BigRational;

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn to_f64(q: &Q) -> f64 {
    match q.to_f64() {
        Some(x) => x,
        None => {
            let n = q.numer().to_f64().unwrap_or(f64::NAN);
            let d = q.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

pub fn fmt_q(q: &Q) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once('/') {
        let n: BigInt = a.trim().parse().ok()?;
        let d: BigInt = b.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Q::from_integer(n))
    }
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a rational square.
pub fn rational_sqrt(q: &Q) -> Option<Q> {
    let n = int_sqrt(q.numer())?;
    let d = int_sqrt(q.denom())?;
    Some(Q::new(n, d))
}

pub fn is_rational_square(q: &Q) -> bool {
    !q.is_zero() && rational_sqrt(q).is_some()
}

/// Squarefree integer representative of the square class of a nonzero rational.
pub fn square_class(q: &Q) -> BigInt {
    let mut n = q.numer() * q.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    n = n.abs();
    let mut out = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0u32;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &p;
        }
        p += 1;
    }
    out *= n;
    out * sign
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn vadd(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vsub(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vscale(a: &[Q], s: &Q) -> Vec<Q> {
    a.iter().map(|x| x * s).collect()
}

pub fn vzero(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

pub fn is_zero_vec(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

pub fn to_f64_vec(a: &[Q]) -> Vec<f64> {
    a.iter().map(to_f64).collect()
}

/// Random rational drawn from the sampling box: an integer in [-bound, bound]
/// divided by a random power of two no larger than `2^max_shift`.
pub fn random_q<R: Rng>(rng: &mut R, bound: i64, max_shift: u32) -> Q {
    let n = rng.gen_range(-bound..=bound);
    let s = rng.gen_range(0..=max_shift);
    qf(n, 1i64 << s)
}

/// Random rational with small numerator and denominator, never zero.
pub fn random_nonzero_q<R: Rng>(rng: &mut R, bound: i64, max_den: i64) -> Q {
    loop {
        let n = rng.gen_range(-bound..=bound);
        if n != 0 {
            let d = rng.gen_range(1..=max_den);
            return qf(n, d);
        }
    }
}

pub fn gcd_big(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_and_classes() {
        assert_eq!(rational_sqrt(&qf(9, 4)), Some(qf(3, 2)));
        assert_eq!(rational_sqrt(&qf(2, 1)), None);
        assert_eq!(square_class(&qf(-4, 1)), BigInt::from(-1));
        assert_eq!(square_class(&qf(12, 5)), BigInt::from(15));
        assert!(!is_rational_square(&qi(0)));
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3", "-7/2", "0"] {
            assert_eq!(fmt_q(&parse_q(s).unwrap()), s);
        }
        assert!(parse_q("1/0").is_none());
    }
}
