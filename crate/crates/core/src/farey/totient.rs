use num_integer::Integer;
use num_traits::ToPrimitive;

use super::cf::cf_encode;
use super::fraction::Fraction;
use super::qmark::question_mark_dyadic;
use super::tree::{check_floor, label_u64};
use crate::error::{Error, Result};

/// Euler's totient for `0..=n` by sieve.
pub fn totient_sieve(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for i in 2..=n {
        if phi[i] == i as u64 {
            for j in (i..=n).step_by(i) {
                phi[j] -= phi[j] / i as u64;
            }
        }
    }
    phi
}

/// Number of odd-index vertices labelled with denominator `q`.
///
/// Each `p/q` with `gcd(p,q) = 1` is placed at `n = ht(p/q)`,
/// `k = 2^n ?(p/q)`; the placement is checked against the tree.
pub fn totient_fiber(q: u64) -> Result<u64> {
    if q < 2 {
        return Err(Error::Domain(format!("totient fiber needs q >= 2, got {q}")));
    }
    let mut count = 0;
    for p in 1..q {
        if p.gcd(&q) != 1 {
            continue;
        }
        let x = Fraction::from_u64(p, q);
        let cf = cf_encode(&x)?;
        let (k, n) = question_mark_dyadic(&cf);
        let n = u32::try_from(n).map_err(|_| Error::Internal("height overflow".into()))?;
        check_floor(n)?;
        let k = k.to_u64().ok_or_else(|| Error::Internal("index overflow".into()))?;
        if k % 2 == 0 {
            return Err(Error::Internal(format!("{x} placed at even index ({n},{k})")));
        }
        if label_u64(n, k)? != (p, q) {
            return Err(Error::Internal(format!("label mismatch for {x} at ({n},{k})")));
        }
        count += 1;
    }
    Ok(count)
}

/// Truncated Dirichlet series `sum_{q <= qmax} phi(q) q^{-s}`.
///
/// For `s > 2` the omitted tail is `O(qmax^{2-s})` and the full series sums
/// to `zeta(s-1)/zeta(s)`.
pub fn partition_function(s: f64, qmax: u64) -> Result<f64> {
    if s.is_nan() || s <= 2.0 {
        return Err(Error::Domain(format!("series diverges for s = {s}")));
    }
    if qmax < 1 {
        return Err(Error::Domain("qmax must be positive".into()));
    }
    let phi = totient_sieve(qmax as usize);
    let mut sum = 0.0;
    for q in (1..=qmax as usize).rev() {
        sum += phi[q] as f64 * (q as f64).powf(-s);
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(&totient_sieve(12)[1..], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }

    #[test]
    fn fibers() {
        assert_eq!(totient_fiber(2).unwrap(), 1);
        assert_eq!(totient_fiber(5).unwrap(), 4);
        assert_eq!(totient_fiber(12).unwrap(), 4);
        assert!(totient_fiber(1).is_err());
    }

    #[test]
    fn partition_function_edges() {
        assert_eq!(partition_function(4.0, 1).unwrap(), 1.0);
        assert!(partition_function(2.0, 10).is_err());
        let a = partition_function(3.0, 100).unwrap();
        let b = partition_function(3.0, 200).unwrap();
        assert!(b > a);
    }
}
