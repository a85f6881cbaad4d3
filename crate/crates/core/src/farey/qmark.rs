use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use super::cf::{cf_encode, ContinuedFraction};
use super::fraction::Fraction;
use super::tree::{check_floor, label, width, TreeVertex};
use crate::error::{Error, Result};

/// `?(x)` written as `k / 2^n` with `n = ht(x)`. Returns `(k, n)`.
///
/// The alternating series `sum (-1)^(j-1) / 2^(a1+..+aj - 1)` is summed over
/// the common denominator `2^(a1+..+at - 1)`.
pub fn question_mark_dyadic(cf: &ContinuedFraction) -> (BigUint, u64) {
    let terms = cf.terms();
    if terms.is_empty() {
        return (BigUint::from(0u32), 0);
    }
    let total: u64 = terms.iter().sum();
    let n = total - 1;
    let mut acc = BigInt::from(0);
    let mut partial = 0u64;
    for (j, &a) in terms.iter().enumerate() {
        partial += a;
        let term = BigInt::one() << (total - partial) as usize;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    (acc.to_biguint().expect("question mark is non-negative"), n)
}

/// Exact `?(x)` for a finite continued fraction.
pub fn question_mark(cf: &ContinuedFraction) -> Fraction {
    let (k, n) = question_mark_dyadic(cf);
    Fraction::new(k, BigUint::one() << n as usize).expect("power of two")
}

pub fn question_mark_of(x: &Fraction) -> Result<Fraction> {
    Ok(question_mark(&cf_encode(x)?))
}

/// `(n,k)` with `n = ht(x)` and `r(n,k) = x`: the first appearance of `x`.
pub fn first_vertex(x: &Fraction) -> Result<TreeVertex> {
    let cf = cf_encode(x)?;
    let (k, n) = question_mark_dyadic(&cf);
    let n = u32::try_from(n).map_err(|_| Error::FloorTooLarge { floor: u32::MAX, limit: super::tree::MAX_FLOOR })?;
    check_floor(n)?;
    let k = k.to_u64().ok_or(Error::Internal("index overflow".into()))?;
    TreeVertex::new(n, k)
}

/// `?^{-1}(k / 2^n) = r(n,k)`.
pub fn question_mark_inv(k: u64, n: u32) -> Result<Fraction> {
    check_floor(n)?;
    if k > width(n) {
        return Err(Error::IndexOutOfRange { floor: n, index: k });
    }
    label(TreeVertex { floor: n, index: k })
}

/// `?^{-1}` of a dyadic rational in `[0,1]`.
pub fn question_mark_inv_dyadic(y: &Fraction) -> Result<Fraction> {
    if !y.in_unit_interval() {
        return Err(Error::OutsideUnitInterval(y.to_string()));
    }
    let den = y.den();
    if (den & (den - 1u32)) != BigUint::from(0u32) {
        return Err(Error::Domain(format!("{y} is not dyadic")));
    }
    let n = den.bits() - 1;
    let n = u32::try_from(n).unwrap_or(u32::MAX);
    check_floor(n)?;
    question_mark_inv(y.num().to_u64().expect("numerator bounded by 2^n"), n)
}
