//! Small helpers for integer vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type IntVec = Vec<BigInt>;

pub fn int_vec(xs: &[i64]) -> IntVec {
    xs.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_zero_vec(a: &[BigInt]) -> bool {
    a.iter().all(Zero::is_zero)
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

/// Divides by the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(a: &[BigInt]) -> IntVec {
    let g = content(a);
    if g.is_zero() {
        return a.to_vec();
    }
    a.iter().map(|x| x / &g).collect()
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> IntVec {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale(k: &BigInt, a: &[BigInt]) -> IntVec {
    a.iter().map(|x| k * x).collect()
}

pub fn neg(a: &[BigInt]) -> IntVec {
    a.iter().map(|x| -x).collect()
}

pub fn unit_vector(n: usize, i: usize) -> IntVec {
    let mut v = vec![BigInt::zero(); n];
    v[i] = BigInt::from(1);
    v
}

pub fn max_abs(a: &[BigInt]) -> BigInt {
    a.iter().map(|x| x.abs()).max().unwrap_or_default()
}

pub fn to_i64(a: &[BigInt]) -> Option<Vec<i64>> {
    use num_traits::ToPrimitive;
    a.iter().map(|x| x.to_i64()).collect()
}
