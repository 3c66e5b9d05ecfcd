//! Exact rational geometry: dense linear algebra, a two-phase simplex
//! solver and double-description vertex enumeration.
//!
//! Everything here works over [`Rational`] (arbitrary precision), so every
//! verdict built on top of it is exact.

pub mod lp;
pub mod matrix;
pub mod polytope;

use num::{BigInt, BigRational, One, Zero};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zeros(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit(n: usize, i: usize) -> Vector {
    let mut v = zeros(n);
    v[i] = Rational::one();
    v
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn neg(v: &[Rational]) -> Vector {
    v.iter().map(|x| -x).collect()
}

pub fn add(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

pub fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Formats a vector as `[p/q, ...]` strings; used in witnesses and reports.
pub fn fmt_vec(v: &[Rational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

/// Primitive integer representative of the ray spanned by `v`.
pub(crate) fn primitive(v: &[Rational]) -> Vec<BigInt> {
    use num::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    normalize_ints(ints)
}

pub(crate) fn normalize_ints(mut v: Vec<BigInt>) -> Vec<BigInt> {
    use num::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in &mut v {
            *x = &*x / &g;
        }
    }
    v
}
